// closed_forms.cpp: Hand-written one- and two-excitation propagators

#include <stdexcept>

#include "jcprop/diagrams.hpp"

namespace jcprop::diagrams {

namespace {

void check_sizes(int n, int p, int q, const std::vector<double>& outputs, const std::vector<double>& inputs)
{
    ProcessSpec{n, p, q, outputs, inputs}.validate();
}

cplx phi1(cplx w, const ModelParams& params) { return phi(1, 1, 1, w, params); }
cplx phi2(cplx w, const ModelParams& params) { return phi(2, 1, 1, w, params); }

// G^(2)_11(omega; k, k') = delta(k - k') phi1(omega - k) + smooth.
struct G11 {
    cplx delta;
    cplx smooth;
};

G11 g11_two(cplx omega, double k, double kp, const ModelParams& params)
{
    const cplx z = params.pole();
    const cplx bracket = 1.0 / (omega - k - kp) + params.lambda * phi2(omega, params) / ((omega - k - z) * (omega - kp - z));
    return {phi1(omega - k, params),
            coupling(kp, params) * coupling_conj(k, params) * phi1(omega - k, params) * phi1(omega - kp, params) * bracket};
}

} // namespace

PropagatorValue closed_form_g1(int p, int q, cplx omega, const std::vector<double>& outputs,
                               const std::vector<double>& inputs, const ModelParams& params)
{
    check_sizes(1, p, q, outputs, inputs);
    PropagatorValue v;
    const cplx g11 = phi1(omega, params);
    if (p == 1 && q == 1) {
        v.accumulate({}, g11);
    } else if (p == 0 && q == 1) {
        v.accumulate({}, coupling_conj(outputs[0], params) * g11 / (omega - outputs[0]));
    } else if (p == 1 && q == 0) {
        v.accumulate({}, coupling(inputs[0], params) * g11 / (omega - inputs[0]));
    } else {
        const double k = outputs[0];
        const double kp = inputs[0];
        v.accumulate({{0, 0}}, 1.0 / (omega - k));
        v.accumulate({}, coupling_conj(k, params) * coupling(kp, params) * g11 / ((omega - k) * (omega - kp)));
    }
    v.canonicalize();
    return v;
}

PropagatorValue closed_form_g2(int p, int q, cplx omega, const std::vector<double>& outputs,
                               const std::vector<double>& inputs, const ModelParams& params)
{
    check_sizes(2, p, q, outputs, inputs);
    PropagatorValue v;
    if (p == 1 && q == 1) {
        const auto g = g11_two(omega, outputs[0], inputs[0], params);
        v.accumulate({{0, 0}}, g.delta);
        v.accumulate({}, g.smooth);
    } else if (p == 0 && q == 1) {
        const double k1 = outputs[0];
        const double k2 = outputs[1];
        const double kp = inputs[0];
        const cplx pre = 1.0 / (omega - k1 - k2);
        const auto a = g11_two(omega, k2, kp, params);
        const auto b = g11_two(omega, k1, kp, params);
        v.accumulate({{1, 0}}, pre * coupling_conj(k1, params) * a.delta);
        v.accumulate({{0, 0}}, pre * coupling_conj(k2, params) * b.delta);
        v.accumulate({}, pre * (coupling_conj(k1, params) * a.smooth + coupling_conj(k2, params) * b.smooth));
    } else if (p == 1 && q == 0) {
        const double k = outputs[0];
        const double kp1 = inputs[0];
        const double kp2 = inputs[1];
        const auto a = g11_two(omega, k, kp2, params);
        const auto b = g11_two(omega, k, kp1, params);
        // Each delta term is evaluated with the paired input momentum set to k.
        v.accumulate({{0, 1}}, coupling(kp1, params) * a.delta / (omega - kp1 - k));
        v.accumulate({{0, 0}}, coupling(kp2, params) * b.delta / (omega - k - kp2));
        v.accumulate({}, (coupling(kp1, params) * a.smooth + coupling(kp2, params) * b.smooth) / (omega - kp1 - kp2));
    } else {
        const double k1 = outputs[0];
        const double k2 = outputs[1];
        const double kp1 = inputs[0];
        const double kp2 = inputs[1];
        const cplx free_pair = 1.0 / (omega - k1 - k2);
        v.accumulate({{0, 0}, {1, 1}}, free_pair);
        v.accumulate({{0, 1}, {1, 0}}, free_pair);

        // g(kp1) G01(k1 k2, kp2) + g(kp2) G01(k1 k2, kp1), each G01 expanded into its delta terms.
        const cplx gp1 = coupling(kp1, params);
        const cplx gp2 = coupling(kp2, params);
        const cplx gs1 = coupling_conj(k1, params);
        const cplx gs2 = coupling_conj(k2, params);
        v.accumulate({{1, 1}}, gp1 * gs1 * phi1(omega - k2, params) * free_pair / (omega - kp1 - k2));
        v.accumulate({{0, 1}}, gp1 * gs2 * phi1(omega - k1, params) * free_pair / (omega - kp1 - k1));
        v.accumulate({{1, 0}}, gp2 * gs1 * phi1(omega - k2, params) * free_pair / (omega - kp2 - k2));
        v.accumulate({{0, 0}}, gp2 * gs2 * phi1(omega - k1, params) * free_pair / (omega - kp2 - k1));

        const auto g01_smooth = [&](double kp) {
            return free_pair * (gs1 * g11_two(omega, k2, kp, params).smooth + gs2 * g11_two(omega, k1, kp, params).smooth);
        };
        v.accumulate({}, (gp1 * g01_smooth(kp2) + gp2 * g01_smooth(kp1)) / (omega - kp1 - kp2));
    }
    v.canonicalize();
    return v;
}

} // namespace jcprop::diagrams
