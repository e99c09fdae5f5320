// selftest.hpp: Invariant groups run by the selftest command

#pragma once

#include <string>
#include <vector>

#include "jcprop/quasimode.hpp"

namespace jcprop::app {

struct GroupResult {
    std::string name;
    bool passed{false};
    double worst{0.0};  // largest observed discrepancy
    double tolerance{0.0};
};

struct SequenceCount {
    int n{0};
    int p{0};
    int q{0};
    std::size_t count{0};
};

struct SelftestReport {
    std::vector<GroupResult> groups;
    std::vector<SequenceCount> sequence_counts;

    bool passed() const;
};

struct SelftestOptions {
    unsigned seed{20240611};
    int quadrature_samples{5};
    // Test fixture: flips the sign of the self-energy inside the reference forms.
    bool mutate_zeta_sign{false};
};

SelftestReport run_selftest(const ModelParams& params, const SelftestOptions& options = {});

} // namespace jcprop::app
