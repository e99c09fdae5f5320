// diagrams.hpp: Time-ordered absorption/emission sequences and the propagators built from them

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jcprop/quasimode.hpp"

namespace jcprop::diagrams {

// G^(N)_{pq}(omega; outputs, inputs): N excitations, atom q -> p, |inputs| = N - q photons in,
// |outputs| = N - p photons out. Bosonic states carry no 1/sqrt(n!) here.
struct ProcessSpec {
    int n{0};
    int p{0};
    int q{0};
    std::vector<double> outputs;
    std::vector<double> inputs;

    void validate() const;
};

enum class EventKind { absorb, emit };

struct Event {
    EventKind kind{EventKind::absorb};
    std::size_t index{0};  // into ProcessSpec::inputs for absorb, ::outputs for emit

    bool operator==(const Event&) const = default;
};

// Propagation between two vertices. p_i/q_i are the atom occupations at the later/earlier end.
struct SegmentData {
    int n_i{0};
    int p_i{0};
    int q_i{0};
    double e_i{0.0};
};

struct EventSequence {
    std::vector<Event> events;  // earliest first

    // One segment more than events. e_i is filled in only when momenta are given.
    std::vector<SegmentData> segments(int n, int p, int q) const;
    std::vector<SegmentData> segments(const ProcessSpec& spec) const;
    bool valid(int n, int p, int q) const;

    bool operator==(const EventSequence&) const = default;
};

// "absorb in0 ; emit out0"; the empty sequence is "".
std::string to_string(const EventSequence& seq);
EventSequence parse_sequence(const std::string& text);

// All valid interleavings of N-q absorbs and N-p emits over distinguishable slots, in
// lexicographic order of (kind, index) with absorb < emit.
std::vector<EventSequence> enumerate_sequences(int n, int p, int q);

// Size of enumerate_sequences(n, p, q) without materializing the list.
std::size_t count_sequences(int n, int p, int q);

cplx linked_amplitude(const EventSequence& seq, const ProcessSpec& spec, cplx omega, const ModelParams& params);

// Sum over every valid sequence: all diagrams in which each photon touches the atom.
cplx linked_sum(const ProcessSpec& spec, cplx omega, const ModelParams& params);

// One term of a distribution-valued propagator: a product of delta(out_i - in_j) over
// delta_pairs times a smooth factor evaluated on the support of those deltas.
struct Term {
    std::vector<std::pair<std::size_t, std::size_t>> delta_pairs;  // (output, input), sorted
    cplx smooth{0.0};
};

struct PropagatorValue {
    std::vector<Term> terms;

    // Adds value to the term with the same (sorted) delta pairs, creating it if absent.
    void accumulate(std::vector<std::pair<std::size_t, std::size_t>> pairs, cplx value);
    const Term* find(std::vector<std::pair<std::size_t, std::size_t>> pairs) const;
    // Smooth part of the delta-free term (0 when absent).
    cplx linked() const;
    // Terms sorted by their delta pairs.
    void canonicalize();
};

// Sum over spectator counts j of delta-constrained linked sums at omega shifted by the
// spectator energies, over every choice of spectators and pairing.
PropagatorValue full_propagator(const ProcessSpec& spec, cplx omega, const ModelParams& params);

// Hand-written N = 1 and N = 2 propagators used as references for full_propagator.
PropagatorValue closed_form_g1(int p, int q, cplx omega, const std::vector<double>& outputs,
                               const std::vector<double>& inputs, const ModelParams& params);
PropagatorValue closed_form_g2(int p, int q, cplx omega, const std::vector<double>& outputs,
                               const std::vector<double>& inputs, const ModelParams& params);

} // namespace jcprop::diagrams
