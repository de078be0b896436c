#pragma once

#include "qhtk/struct_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhtk {

// One cylindrical end: the composite projection pi_i ∘ delta-bar as a
// 2 x rank rational matrix into the end coordinates (e_L, p), plus the sign
// with which delta-bar hits the end's unit.
struct CobordismEnd {
    std::string name;
    std::vector<std::vector<Rat>> delta;  // 2 rows, rank columns
    int unit_sign = 1;
};

// Ring basis {e = gamma_0, gamma_1, ..., gamma_d} with unit index 0.
// ends.size() == rank: ends[0] is the distinguished end receiving every
// gamma_i; ends[i] pairs with gamma_i.
// ends.size() == rank - 1: no distinguished end; ends[k] pairs with
// gamma_{k+1}.
struct CobordismData {
    StructRing ring;
    std::vector<CobordismEnd> ends;
};

enum class CheckStatus { pass, fail, inconclusive };

struct Check {
    std::string name;    // stable identifier, e.g. "thmB.square"
    CheckStatus status;
    std::string detail;
};

struct EndSummary {
    std::string name;
    Rat sigma;
    Rat tau;
    Rat disc;       // sigma^2 + 4 tau
    bool integral;  // sigma and tau are integers
};

struct CobordismReport {
    std::vector<Check> checks;
    std::vector<EndSummary> ends;           // paired ends, then the distinguished end last
    std::optional<Rat> common_disc;         // set when all ends agree
    std::size_t r = 0;                      // number of paired ends
    std::optional<Rat> square_root;         // set when r >= 2 and the value is a square
    DiscriminantResult ring_disc{DiscriminantResult::Kind::unknown, Rat(0), std::nullopt};

    bool all_checks_pass() const;
};

// Validates the CobordismData invariants (throws invalid_input listing every
// violated constraint, including the offending index pair), then extracts
// (sigma_i, tau_i) per end from the pushforwards of gamma_i * gamma_i and
// assembles the discriminant-equality and square verdicts.
CobordismReport cobordism_report(const CobordismData& c);

// The three-sphere surgery ring on {e, x1, x2, x3}: x_i^2 = -4 sigma_i x_i
// with (sigma_1, sigma_2, sigma_3) = (-sigma, sigma, -sigma),
// x2*x3 = x3*x2 = 4 alpha x3, x1 x2 = x1 x3 = 0, with the diagonal
// pushforward table pi_i(x_i) = -4 p_i and the single off-diagonal entry
// pi_3(x2) = 4 alpha e_3.
CobordismData three_sphere_example(const Int& sigma, const Int& alpha);

// Two-end data with both ends the rank-2 algebra of q and the identity
// pushforwards of the basis {e, gamma_1}.
CobordismData two_end_example(const QuadraticAlgebra& q);

}  // namespace qhtk
