// diagrams.cpp: Sequence enumeration, linked amplitudes and the spectator expansion

#include "jcprop/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jcprop::diagrams {

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

void check_occupations(int n, int p, int q)
{
    if (p < 0 || p > 1 || q < 0 || q > 1) {
        throw std::invalid_argument("atom occupations must be 0 or 1");
    }
    if (n < 0) {
        throw std::invalid_argument("excitation number must be non-negative");
    }
}

// Depth-first walk over interleavings. Each segment is checked once its later boundary is
// known, so invalid prefixes are pruned early.
struct Enumerator {
    int n;
    int p;
    int q;
    std::size_t n_abs;
    std::size_t n_emit;
    std::vector<bool> absorbed;
    std::vector<bool> emitted;
    std::vector<Event> current;
    std::vector<EventSequence> out;

    void walk(std::size_t n_absorbed, std::size_t n_emitted, int q_now)
    {
        const int n_now = n - static_cast<int>(n_abs - n_absorbed) - static_cast<int>(n_emitted);
        if (n_absorbed == n_abs && n_emitted == n_emit) {
            if (n_now >= p && n_now >= q_now) {
                out.push_back(EventSequence{current});
            }
            return;
        }
        if (n_now < q_now) {
            return;
        }
        // Segment ending in an absorb has p_i = 0; the check n_now >= 0 always holds.
        for (std::size_t i = 0; i < n_abs; ++i) {
            if (absorbed[i]) continue;
            absorbed[i] = true;
            current.push_back({EventKind::absorb, i});
            walk(n_absorbed + 1, n_emitted, 1);
            current.pop_back();
            absorbed[i] = false;
        }
        // Segment ending in an emit has p_i = 1.
        if (n_now < 1) {
            return;
        }
        for (std::size_t i = 0; i < n_emit; ++i) {
            if (emitted[i]) continue;
            emitted[i] = true;
            current.push_back({EventKind::emit, i});
            walk(n_absorbed, n_emitted + 1, 0);
            current.pop_back();
            emitted[i] = false;
        }
    }
};

// Every ordered choice of j distinct indices out of n, in lexicographic order.
void ordered_choices(std::size_t n, std::size_t j, std::vector<std::size_t>& cur, std::vector<bool>& used,
                     std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == j) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(i);
        ordered_choices(n, j, cur, used, out);
        cur.pop_back();
        used[i] = false;
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t j)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(j), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) s.push_back(i);
        }
        out.push_back(std::move(s));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

std::vector<double> remove_indices(const std::vector<double>& values, const std::vector<std::size_t>& drop)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(values[i]);
    }
    return out;
}

} // namespace

void ProcessSpec::validate() const
{
    check_occupations(n, p, q);
    if (n < p || n < q) {
        throw std::invalid_argument("process needs n >= p and n >= q");
    }
    if (outputs.size() != static_cast<std::size_t>(n - p)) {
        throw std::invalid_argument("output momentum count must equal n - p");
    }
    if (inputs.size() != static_cast<std::size_t>(n - q)) {
        throw std::invalid_argument("input momentum count must equal n - q");
    }
    for (double k : outputs) {
        if (!std::isfinite(k)) throw std::invalid_argument("output momenta must be finite");
    }
    for (double k : inputs) {
        if (!std::isfinite(k)) throw std::invalid_argument("input momenta must be finite");
    }
}

std::vector<SegmentData> EventSequence::segments(int n, int p, int q) const
{
    check_occupations(n, p, q);
    const int n_abs = static_cast<int>(std::count_if(events.begin(), events.end(),
                                                     [](const Event& e) { return e.kind == EventKind::absorb; }));
    std::vector<SegmentData> segs;
    segs.reserve(events.size() + 1);
    int unabsorbed = n_abs;
    int emitted = 0;
    int q_now = q;
    for (std::size_t i = 0; i <= events.size(); ++i) {
        SegmentData s;
        s.n_i = n - unabsorbed - emitted;
        s.q_i = q_now;
        if (i == events.size()) {
            s.p_i = p;
        } else {
            s.p_i = events[i].kind == EventKind::absorb ? 0 : 1;
        }
        segs.push_back(s);
        if (i < events.size()) {
            if (events[i].kind == EventKind::absorb) {
                --unabsorbed;
                q_now = 1;
            } else {
                ++emitted;
                q_now = 0;
            }
        }
    }
    return segs;
}

std::vector<SegmentData> EventSequence::segments(const ProcessSpec& spec) const
{
    auto segs = segments(spec.n, spec.p, spec.q);
    double energy = std::accumulate(spec.inputs.begin(), spec.inputs.end(), 0.0);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        segs[i].e_i = energy;
        if (i < events.size()) {
            const auto& ev = events[i];
            energy += ev.kind == EventKind::absorb ? -spec.inputs.at(ev.index) : spec.outputs.at(ev.index);
        }
    }
    return segs;
}

bool EventSequence::valid(int n, int p, int q) const
{
    std::vector<bool> seen_in;
    std::vector<bool> seen_out;
    for (const auto& e : events) {
        auto& seen = e.kind == EventKind::absorb ? seen_in : seen_out;
        if (e.index >= seen.size()) seen.resize(e.index + 1, false);
        if (seen[e.index]) return false;
        seen[e.index] = true;
    }
    const auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    if (n < p || n < q) return false;
    if (seen_in.size() != static_cast<std::size_t>(n - q) || !all(seen_in)) return false;
    if (seen_out.size() != static_cast<std::size_t>(n - p) || !all(seen_out)) return false;
    for (const auto& s : segments(n, p, q)) {
        if (s.n_i < s.p_i || s.n_i < s.q_i) return false;
    }
    return true;
}

std::string to_string(const EventSequence& seq)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.events.size(); ++i) {
        if (i) os << " ; ";
        const auto& e = seq.events[i];
        os << (e.kind == EventKind::absorb ? "absorb in" : "emit out") << e.index;
    }
    return os.str();
}

EventSequence parse_sequence(const std::string& text)
{
    EventSequence seq;
    std::istringstream is(text);
    std::string verb;
    std::string slot;
    while (is >> verb) {
        if (verb == ";") continue;
        if (!(is >> slot)) {
            throw std::invalid_argument("sequence text ends after '" + verb + "'");
        }
        Event e;
        std::string prefix;
        if (verb == "absorb") {
            e.kind = EventKind::absorb;
            prefix = "in";
        } else if (verb == "emit") {
            e.kind = EventKind::emit;
            prefix = "out";
        } else {
            throw std::invalid_argument("unknown event '" + verb + "'");
        }
        if (slot.rfind(prefix, 0) != 0 || slot.size() == prefix.size() ||
            slot.find_first_not_of("0123456789", prefix.size()) != std::string::npos) {
            throw std::invalid_argument("bad slot '" + slot + "' for " + verb);
        }
        e.index = static_cast<std::size_t>(std::stoul(slot.substr(prefix.size())));
        seq.events.push_back(e);
    }
    return seq;
}

std::vector<EventSequence> enumerate_sequences(int n, int p, int q)
{
    check_occupations(n, p, q);
    if (n < p || n < q) {
        return {};
    }
    Enumerator en{n, p, q,
                  static_cast<std::size_t>(n - q), static_cast<std::size_t>(n - p),
                  std::vector<bool>(static_cast<std::size_t>(n - q), false),
                  std::vector<bool>(static_cast<std::size_t>(n - p), false), {}, {}};
    en.walk(0, 0, q);
    return std::move(en.out);
}

std::size_t count_sequences(int n, int p, int q)
{
    check_occupations(n, p, q);
    if (n < p || n < q) {
        return 0;
    }
    // Valid orderings of the event kinds, by (absorbs done, emits done, current q); each kind
    // ordering stands for (N-q)! (N-p)! labelled sequences.
    const int n_abs = n - q;
    const int n_emit = n - p;
    std::vector<std::size_t> ways(static_cast<std::size_t>((n_abs + 1) * (n_emit + 1) * 2), 0);
    const auto at = [&](int a, int e, int qi) -> std::size_t& {
        return ways[static_cast<std::size_t>((a * (n_emit + 1) + e) * 2 + qi)];
    };
    at(0, 0, q) = 1;
    std::size_t kinds = 0;
    for (int a = 0; a <= n_abs; ++a) {
        for (int e = 0; e <= n_emit; ++e) {
            for (int qi = 0; qi <= 1; ++qi) {
                const std::size_t w = at(a, e, qi);
                if (w == 0) continue;
                const int n_now = n - (n_abs - a) - e;
                if (n_now < qi) continue;
                if (a == n_abs && e == n_emit) {
                    if (n_now >= p) kinds += w;
                    continue;
                }
                if (a < n_abs) at(a + 1, e, 1) += w;
                if (e < n_emit && n_now >= 1) at(a, e + 1, 0) += w;
            }
        }
    }
    std::size_t labels = 1;
    for (int i = 2; i <= n_abs; ++i) labels *= static_cast<std::size_t>(i);
    for (int i = 2; i <= n_emit; ++i) labels *= static_cast<std::size_t>(i);
    return kinds * labels;
}

cplx linked_amplitude(const EventSequence& seq, const ProcessSpec& spec, cplx omega, const ModelParams& params)
{
    spec.validate();
    if (!seq.valid(spec.n, spec.p, spec.q)) {
        throw std::invalid_argument("sequence '" + to_string(seq) + "' is not valid for the process");
    }
    cplx amp{1.0, 0.0};
    for (const auto& e : seq.events) {
        amp *= e.kind == EventKind::absorb ? coupling(spec.inputs[e.index], params)
                                           : coupling_conj(spec.outputs[e.index], params);
    }
    for (const auto& s : seq.segments(spec)) {
        amp *= phi(s.n_i, s.p_i, s.q_i, omega - s.e_i, params);
    }
    return amp;
}

cplx linked_sum(const ProcessSpec& spec, cplx omega, const ModelParams& params)
{
    if (spec.n < std::max(spec.p, spec.q)) {
        return 0.0;
    }
    if (spec.n > params.n_max) {
        throw std::invalid_argument("excitation number exceeds n_max");
    }
    cplx total{0.0, 0.0};
    for (const auto& seq : enumerate_sequences(spec.n, spec.p, spec.q)) {
        total += linked_amplitude(seq, spec, omega, params);
    }
    return total;
}

void PropagatorValue::accumulate(std::vector<std::pair<std::size_t, std::size_t>> pairs, cplx value)
{
    std::sort(pairs.begin(), pairs.end());
    for (auto& t : terms) {
        if (t.delta_pairs == pairs) {
            t.smooth += value;
            return;
        }
    }
    terms.push_back(Term{std::move(pairs), value});
}

const Term* PropagatorValue::find(std::vector<std::pair<std::size_t, std::size_t>> pairs) const
{
    std::sort(pairs.begin(), pairs.end());
    for (const auto& t : terms) {
        if (t.delta_pairs == pairs) return &t;
    }
    return nullptr;
}

cplx PropagatorValue::linked() const
{
    const Term* t = find({});
    return t ? t->smooth : cplx{0.0, 0.0};
}

void PropagatorValue::canonicalize()
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) {
                  if (a.delta_pairs.size() != b.delta_pairs.size()) return a.delta_pairs.size() < b.delta_pairs.size();
                  return a.delta_pairs < b.delta_pairs;
              });
}

PropagatorValue full_propagator(const ProcessSpec& spec, cplx omega, const ModelParams& params)
{
    spec.validate();
    if (spec.n > params.n_max) {
        throw std::invalid_argument("excitation number exceeds n_max");
    }
    PropagatorValue value;
    const std::size_t max_spectators = std::min(spec.outputs.size(), spec.inputs.size());
    for (std::size_t j = 0; j <= max_spectators; ++j) {
        const auto out_sets = subsets(spec.outputs.size(), j);
        std::vector<std::vector<std::size_t>> in_orders;
        std::vector<std::size_t> cur;
        std::vector<bool> used(spec.inputs.size(), false);
        ordered_choices(spec.inputs.size(), j, cur, used, in_orders);

        for (const auto& outs : out_sets) {
            double shift = 0.0;
            for (std::size_t o : outs) shift += spec.outputs[o];
            ProcessSpec reduced{spec.n - static_cast<int>(j), spec.p, spec.q,
                                remove_indices(spec.outputs, outs), {}};
            for (const auto& ins : in_orders) {
                reduced.inputs = remove_indices(spec.inputs, ins);
                Pairs pairs;
                for (std::size_t a = 0; a < j; ++a) pairs.emplace_back(outs[a], ins[a]);
                value.accumulate(std::move(pairs), linked_sum(reduced, omega - shift, params));
            }
        }
    }
    value.canonicalize();
    return value;
}

} // namespace jcprop::diagrams
