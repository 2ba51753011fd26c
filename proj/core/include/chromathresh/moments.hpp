#pragma once

// Closed-form moment and threshold expressions, evaluated exactly (big
// rationals) when the representation stays below a size cap and always in
// natural-log space, so the same formulas work at n = 4 and n = 10^6.

#include <cstdint>
#include <optional>
#include <string>

#include "chromathresh/bigint.hpp"
#include "chromathresh/graph.hpp"
#include "chromathresh/query.hpp"

namespace chromathresh {

// Cap on the exact representation, in bits (64 kilobits).
inline constexpr double kExactBitCap = 65536.0;

// A nonnegative quantity carried both ways. When exact is present the log
// is derived from it; otherwise the log comes from lgamma-based evaluation
// (relative error well under 1e-12). log_value = -inf encodes zero.
struct ScalarValue {
    std::optional<BigRat> exact;
    double log_value = 0.0;

    static ScalarValue from_exact(BigRat v);
    static ScalarValue from_log(double log_v);
    static ScalarValue zero();

    bool is_zero() const;
    // log with 15 significant digits, or "-inf".
    std::string log_string() const;
};

enum class Regime { Zero, One, Unknown };
std::string regime_name(Regime r);

// Finite-n knobs for the asymptotic hypotheses. margin operationalizes
// "much greater / much less" multiplicatively.
struct RegimeConstants {
    double epsilon = 0.1;                  // in (0,1)
    double c4 = 2.0;                       // < e
    std::string c5_growth = "loglog";      // unbounded function; default log log n
    double c7 = 2.0;                       // > 1
    double clique_lower_divisor = 1.704e9; // stated constant, encoded literally
    double margin = 10.0;                  // > 1

    void validate() const;
};

// E(X) = n! / ((n-2k)! 2^k k! r^(k-1)); the expected number of
// monochromatic k-matchings.
ScalarValue expected_mono(Vertex n, std::uint32_t k, Color r);

// E(Y) = n!/((n-2k)! 2^k k!) * r!/((r-k)! r^k); zero when r < k.
ScalarValue expected_hetero(Vertex n, std::uint32_t k, Color r);

// E(X) at k = n/2 (n even).
ScalarValue expected_mono_perfect(Vertex n, Color r);

// Upper bound for Delta/E(X)^2:
// (k!k!/n!) * sum_{s=1}^{k-1} (n-2s)! 2^s r^(s-1) / (s!(k-s)!(k-s)!).
// k = 1 returns 0 (empty sum).
ScalarValue delta_ratio_bound_mono(Vertex n, std::uint32_t k, Color r);

// Upper bound for Delta'/E(Y)^2, requires k <= r:
// (k!k!/(n!r!)) * sum_{s=1}^{k-1} (n-2s)! (r-s)! (2r)^s / (s!(k-s)!(k-s)!).
ScalarValue delta_ratio_bound_hetero(Vertex n, std::uint32_t k, Color r);

// Threshold functions in r:
//   matching: (n!/((n-2k)! 2^k k!))^(1/(k-1)),   k >= 2
//   clique:   n^(k/(C(k,2)-1)),                  k >= 3
//   tree:     k * C(n,k)^(1/(k-2)),              k >= 3
// exact present only when the root is integral.
ScalarValue threshold(SubgraphKind kind, Vertex n, std::uint32_t k);

// Finite-n encoding of the theorems' sufficient conditions; predicts the
// asymptotic limit for labeling experiment grids. Unknown covers points
// where no hypothesis applies or where two hypotheses disagree.
Regime classify_regime(const PropertyQuery& q, Vertex n, Color r,
                       const RegimeConstants& consts = {});

struct MomentReport {
    Vertex n = 0;
    std::uint32_t k = 0;
    Color r = 0;
    BigInt q;
    ScalarValue e_mono;
    ScalarValue e_hetero;
    ScalarValue delta_ratio_mono; // k = 1: exact zero
    std::optional<ScalarValue> delta_ratio_hetero; // absent when r < k
    std::optional<ScalarValue> threshold_value;    // absent when k < 2
    Regime regime = Regime::Unknown;               // mono k-matching prediction
};

MomentReport moment_report(Vertex n, std::uint32_t k, Color r,
                           const RegimeConstants& consts = {});
std::string moment_report_to_json(const MomentReport& report);

} // namespace chromathresh
