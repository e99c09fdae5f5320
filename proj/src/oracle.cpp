// oracle.cpp: Matrix-free Hamiltonian, Chebyshev time evolution and joint-spectrum comparison

#include "jcprop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "jcprop/chebyshev.hpp"
#include "jcprop/errors.hpp"

namespace jcprop::oracle {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Row-major upper triangle, j <= l.
std::size_t packed_index(std::size_t m, Eigen::Index j, Eigen::Index l)
{
    const auto uj = static_cast<std::size_t>(j);
    return uj * (2 * m - uj + 1) / 2 + static_cast<std::size_t>(l - j);
}

// Integral of the unit Lorentzian (w/pi)/((k-c)^2 + w^2) over [a, b]; infinite ends allowed.
double lorentz_mass(double a, double b, double centre, double width)
{
    const auto f = [&](double x) {
        if (std::isinf(x)) return x > 0 ? 0.5 * std::numbers::pi : -0.5 * std::numbers::pi;
        return std::atan((x - centre) / width);
    };
    return (f(b) - f(a)) / std::numbers::pi;
}

// Cell [edges(j), edges(j+1)], with the outermost cells running to infinity.
std::pair<double, double> cell_bounds(const DiscretizedModel& m, Eigen::Index j)
{
    const double inf = std::numeric_limits<double>::infinity();
    const double a = j == 0 ? -inf : m.edges(j);
    const double b = j == m.modes() - 1 ? inf : m.edges(j + 1);
    return {a, b};
}

struct Bounds {
    double centre;
    double half;
};

Bounds spectral_bounds(double lo_diag, double hi_diag, double coupling_norm)
{
    const double pad = 1.05 * kSqrt2 * coupling_norm + 1e-9 * std::max(1.0, std::abs(hi_diag - lo_diag));
    const double lo = lo_diag - pad;
    const double hi = hi_diag + pad;
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

// H on [b_0..b_{M-1}, packed pairs], scaled to (H - centre) / half.
class TwoExcitationOp {
public:
    explicit TwoExcitationOp(const DiscretizedModel& model)
        : m_(model.modes())
    {
        const double kmin = model.k.minCoeff();
        const double kmax = model.k.maxCoeff();
        const double wa = model.params.omega_a;
        const auto b = spectral_bounds(std::min(wa + kmin, 2.0 * kmin), std::max(wa + kmax, 2.0 * kmax), model.g.norm());
        centre_ = b.centre;
        half_ = b.half;
        e_pair_ = (model.k.array() - 0.5 * centre_) / half_;
        e_b_ = (wa + model.k.array() - centre_) / half_;
        g_ = model.g / half_;
        gc_ = g_.conjugate();
        scratch_.resize(m_);
    }

    double centre() const { return centre_; }
    double half_width() const { return half_; }

    void fused(const Eigen::VectorXcd& cur, Eigen::VectorXcd& prev, Eigen::VectorXcd& acc, double alpha, double beta,
               cplx coef) const
    {
        const cplx* bx = cur.data();
        const cplx* px = cur.data() + m_;
        cplx* pp = prev.data() + m_;
        cplx* pa = acc.data() + m_;
        const cplx* g = g_.data();
        const cplx* gc = gc_.data();
        const double* e = e_pair_.data();
        cplx* hb = scratch_.data();
        scratch_.setZero();

        std::size_t idx = 0;
        for (Eigen::Index j = 0; j < m_; ++j) {
            const cplx bj = bx[j];
            const cplx gj = g[j];
            const cplx gcj = gc[j];
            const double ej = e[j];
            // Diagonal pair (j, j).
            {
                const cplx x = px[idx];
                const cplx hx = 2.0 * ej * x + kSqrt2 * gcj * bj;
                hb[j] += kSqrt2 * gj * x;
                const cplx nx = alpha * hx - beta * pp[idx];
                pp[idx] = nx;
                pa[idx] += coef * nx;
                ++idx;
            }
            cplx row_sum{0.0, 0.0};
            const Eigen::Index len = m_ - j - 1;
            const cplx* xr = px + idx;
            cplx* pr = pp + idx;
            cplx* ar = pa + idx;
            for (Eigen::Index t = 0; t < len; ++t) {
                const Eigen::Index l = j + 1 + t;
                const cplx x = xr[t];
                const cplx hx = (ej + e[l]) * x + gc[l] * bj + gcj * bx[l];
                row_sum += g[l] * x;
                hb[l] += gj * x;
                const cplx nx = alpha * hx - beta * pr[t];
                pr[t] = nx;
                ar[t] += coef * nx;
            }
            hb[j] += row_sum;
            idx += static_cast<std::size_t>(len);
        }
        for (Eigen::Index j = 0; j < m_; ++j) {
            const cplx hbj = e_b_(j) * bx[j] + hb[j];
            const cplx nb = alpha * hbj - beta * prev(j);
            prev(j) = nb;
            acc(j) += coef * nb;
        }
    }

private:
    Eigen::Index m_;
    double centre_{0.0};
    double half_{1.0};
    Eigen::ArrayXd e_pair_;
    Eigen::ArrayXd e_b_;
    Eigen::VectorXcd g_;
    Eigen::VectorXcd gc_;
    mutable Eigen::VectorXcd scratch_;
};

// H on [atom, photon_0..photon_{M-1}], scaled.
class OneExcitationOp {
public:
    explicit OneExcitationOp(const DiscretizedModel& model) : m_(model.modes())
    {
        const double wa = model.params.omega_a;
        const auto b = spectral_bounds(std::min(wa, model.k.minCoeff()), std::max(wa, model.k.maxCoeff()),
                                       model.g.norm());
        centre_ = b.centre;
        half_ = b.half;
        e_atom_ = (wa - centre_) / half_;
        e_ = (model.k.array() - centre_) / half_;
        g_ = model.g / half_;
    }

    double centre() const { return centre_; }
    double half_width() const { return half_; }

    void fused(const Eigen::VectorXcd& cur, Eigen::VectorXcd& prev, Eigen::VectorXcd& acc, double alpha, double beta,
               cplx coef) const
    {
        const cplx a = cur(0);
        const auto photons = cur.tail(m_);
        const cplx ha = e_atom_ * a + (g_.array() * photons.array()).sum();
        for (Eigen::Index j = 0; j < m_; ++j) {
            const cplx h = e_(j) * cur(j + 1) + std::conj(g_(j)) * a;
            const cplx n = alpha * h - beta * prev(j + 1);
            prev(j + 1) = n;
            acc(j + 1) += coef * n;
        }
        const cplx na = alpha * ha - beta * prev(0);
        prev(0) = na;
        acc(0) += coef * na;
    }

private:
    Eigen::Index m_;
    double centre_{0.0};
    double half_{1.0};
    double e_atom_{0.0};
    Eigen::ArrayXd e_;
    Eigen::VectorXcd g_;
};

Eigen::Index lower_cell(const Eigen::VectorXd& k, double x)
{
    const auto* begin = k.data();
    const auto* end = k.data() + k.size();
    const auto it = std::upper_bound(begin, end, x);
    const Eigen::Index i = static_cast<Eigen::Index>(it - begin) - 1;
    return std::clamp<Eigen::Index>(i, 0, k.size() - 2);
}

} // namespace

std::string to_string(GridKind kind)
{
    return kind == GridKind::uniform ? "uniform" : "tangent";
}

GridKind parse_grid_kind(const std::string& text)
{
    if (text == "uniform") return GridKind::uniform;
    if (text == "tangent") return GridKind::tangent;
    throw std::invalid_argument("unknown grid kind '" + text + "'");
}

std::size_t DiscretizedModel::pair_count() const
{
    const auto m = static_cast<std::size_t>(modes());
    return m * (m + 1) / 2;
}

std::size_t DiscretizedModel::pair_index(Eigen::Index j, Eigen::Index l) const
{
    if (j > l) std::swap(j, l);
    return packed_index(static_cast<std::size_t>(modes()), j, l);
}

DiscretizedModel build(const ModelParams& params, Eigen::Index mode_count, double window, GridKind kind, double scale)
{
    params.validate(true);
    if (mode_count < 64) {
        throw std::invalid_argument("oracle needs at least 64 modes");
    }
    if (!(window >= 10.0 * params.kappa_c) || !std::isfinite(window)) {
        throw std::invalid_argument("oracle window must be at least 10 kappa_c");
    }
    DiscretizedModel m;
    m.params = params;
    m.kind = kind;
    m.window = window;
    m.scale = scale > 0.0 ? scale : params.kappa_c;

    const Eigen::Index n = mode_count;
    m.edges.resize(n + 1);
    m.k.resize(n);
    if (kind == GridKind::uniform) {
        m.edges = Eigen::VectorXd::LinSpaced(n + 1, params.k_c - window, params.k_c + window);
        m.k = 0.5 * (m.edges.head(n) + m.edges.tail(n));
    } else {
        const double theta_max = std::atan(window / m.scale);
        const Eigen::VectorXd theta = Eigen::VectorXd::LinSpaced(n + 1, -theta_max, theta_max);
        for (Eigen::Index i = 0; i <= n; ++i) m.edges(i) = params.k_c + m.scale * std::tan(theta(i));
        m.edges(0) = params.k_c - window;
        m.edges(n) = params.k_c + window;
        for (Eigen::Index i = 0; i < n; ++i) {
            m.k(i) = params.k_c + m.scale * std::tan(0.5 * (theta(i) + theta(i + 1)));
        }
    }
    m.width = m.edges.tail(n) - m.edges.head(n);

    m.g.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (params.lambda == 0.0) {
            m.g(j) = 0.0;
            continue;
        }
        const auto [a, b] = cell_bounds(m, j);
        const double mass = params.lambda * lorentz_mass(a, b, params.k_c, params.kappa_c);
        const cplx gk = coupling(m.k(j), params);
        m.g(j) = std::sqrt(mass) * gk / std::abs(gk);
    }
    return m;
}

cplx SectorState::pair(Eigen::Index j, Eigen::Index l) const
{
    if (j > l) std::swap(j, l);
    const std::size_t idx = packed_index(static_cast<std::size_t>(modes), j, l);
    const cplx x = amplitudes(modes + static_cast<Eigen::Index>(idx));
    return j == l ? x : x / kSqrt2;
}

SectorState zero_state(const DiscretizedModel& model)
{
    SectorState s;
    s.modes = model.modes();
    s.amplitudes = Eigen::VectorXcd::Zero(model.modes() + static_cast<Eigen::Index>(model.pair_count()));
    return s;
}

SectorState initial_state(const DiscretizedModel& model, const scattering::InputPacket& packet)
{
    packet.validate();
    if (model.window < 10.0 * std::max(packet.kappa_in, model.params.kappa_c)) {
        throw std::invalid_argument("oracle window narrower than 10 max(kappa_in, kappa_c)");
    }
    auto s = zero_state(model);
    for (Eigen::Index j = 0; j < model.modes(); ++j) {
        const auto [a, b] = cell_bounds(model, j);
        const double mass = lorentz_mass(a, b, packet.centre, packet.kappa_in);
        const cplx c = packet.amplitude(model.k(j));
        s.amplitudes(j) = std::sqrt(mass) * c / std::abs(c);
    }
    s.amplitudes /= s.amplitudes.norm();
    return s;
}

SectorState apply_hamiltonian(const DiscretizedModel& model, const SectorState& state)
{
    // Unscaled action recovered from the scaled operator: H x = half * Hs x + centre * x.
    TwoExcitationOp op(model);
    Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(state.amplitudes.size());
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(state.amplitudes.size());
    op.fused(state.amplitudes, prev, acc, 1.0, 0.0, 0.0);
    SectorState out = state;
    out.amplitudes = op.half_width() * prev + op.centre() * state.amplitudes;
    return out;
}

SectorState evolve(const DiscretizedModel& model, const SectorState& initial, double t_final, double tol,
                   EvolveStats* stats)
{
    if (initial.modes != model.modes() ||
        initial.amplitudes.size() != model.modes() + static_cast<Eigen::Index>(model.pair_count())) {
        throw std::invalid_argument("state does not match the discretized model");
    }
    const double n0 = initial.norm();
    if (std::abs(n0 - 1.0) > 1e-12) {
        throw std::invalid_argument("initial state must have unit norm");
    }
    TwoExcitationOp op(model);
    SectorState s = initial;
    chebyshev::Stats cs;
    chebyshev::evolve(op, s.amplitudes, t_final, tol, &cs);
    if (stats) {
        stats->norm_drift = std::abs(s.norm() - n0);
        stats->matvecs = cs.matvecs;
    }
    return s;
}

SingleExcitationState excited_atom(const DiscretizedModel& model)
{
    return {cplx{1.0, 0.0}, Eigen::VectorXcd::Zero(model.modes())};
}

SingleExcitationState evolve(const DiscretizedModel& model, const SingleExcitationState& initial, double t_final,
                             double tol, EvolveStats* stats)
{
    if (initial.photons.size() != model.modes()) {
        throw std::invalid_argument("state does not match the discretized model");
    }
    Eigen::VectorXcd psi(model.modes() + 1);
    psi(0) = initial.atom;
    psi.tail(model.modes()) = initial.photons;
    const double n0 = psi.norm();
    OneExcitationOp op(model);
    chebyshev::Stats cs;
    chebyshev::evolve(op, psi, t_final, tol, &cs);
    if (stats) {
        stats->norm_drift = std::abs(psi.norm() - n0);
        stats->matvecs = cs.matvecs;
    }
    return {psi(0), psi.tail(model.modes())};
}

double pair_density(const DiscretizedModel& model, const SectorState& state, double k1, double k2)
{
    const auto density = [&](Eigen::Index j, Eigen::Index l) {
        return std::norm(state.pair(j, l)) / (model.width(j) * model.width(l));
    };
    const Eigen::Index i = lower_cell(model.k, k1);
    const Eigen::Index j = lower_cell(model.k, k2);
    const double u = std::clamp((k1 - model.k(i)) / (model.k(i + 1) - model.k(i)), 0.0, 1.0);
    const double v = std::clamp((k2 - model.k(j)) / (model.k(j + 1) - model.k(j)), 0.0, 1.0);
    return (1 - u) * (1 - v) * density(i, j) + u * (1 - v) * density(i + 1, j) + (1 - u) * v * density(i, j + 1) +
           u * v * density(i + 1, j + 1);
}

Report compare_state(const DiscretizedModel& model, const SectorState& state, const scattering::InputPacket& packet,
                     const CompareGrid& grid)
{
    if (grid.points < 2 || !(grid.window > 0.0)) {
        throw std::invalid_argument("comparison grid needs a positive window and at least 2 points");
    }
    Report r;
    const Eigen::VectorXd axis =
        Eigen::VectorXd::LinSpaced(grid.points, model.params.k_c - grid.window, model.params.k_c + grid.window);
    double diff2 = 0.0;
    double ref2 = 0.0;
    double max_diff = 0.0;
    double max_ref = 0.0;
    for (int a = 0; a < grid.points; ++a) {
        for (int b = 0; b < grid.points; ++b) {
            const double ref = model.params.lambda > 0.0
                                   ? std::norm(scattering::two_photon_amplitude(axis(a), axis(b), packet, model.params))
                                   : 0.0;
            const double got = pair_density(model, state, axis(a), axis(b));
            diff2 += (got - ref) * (got - ref);
            ref2 += ref * ref;
            max_diff = std::max(max_diff, std::abs(got - ref));
            max_ref = std::max(max_ref, ref);
        }
    }
    // With no coupling the analytic amplitude vanishes and the errors are reported in absolute terms.
    r.l2_rel_error = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    r.max_rel_error = max_ref > 0.0 ? max_diff / max_ref : max_diff;
    r.residual_b_norm = state.b_norm2();
    r.coupling_sum_ratio = model.params.lambda > 0.0 ? model.g.squaredNorm() / model.params.lambda : 0.0;
    if (r.residual_b_norm > 1e-3) {
        r.warnings.push_back("single-excitation norm " + std::to_string(r.residual_b_norm) +
                             " above 1e-3: evolution has not reached the asymptote");
    }
    return r;
}

Report compare_joint_spectrum(const DiscretizedModel& model, const scattering::InputPacket& packet, double t_final,
                              const CompareGrid& grid, double tol)
{
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("t_final must be positive and finite");
    }
    if (model.params.lambda > 0.0 && t_final < 30.0 / gamma_sp(model.params)) {
        throw std::invalid_argument("t_final must be at least 30 / gamma_sp");
    }
    EvolveStats st;
    const auto state = evolve(model, initial_state(model, packet), t_final, tol, &st);
    Report r = compare_state(model, state, packet, grid);
    r.norm_drift = st.norm_drift;
    r.matvecs = st.matvecs;
    r.t_final = t_final;
    return r;
}

} // namespace jcprop::oracle
