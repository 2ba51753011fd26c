#include "chromathresh/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "chromathresh/oracle.hpp"

namespace chromathresh {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;
// slack for boundary comparisons like r * margin == threshold exactly
constexpr double kCmpEps = 1e-9;

double lg(std::uint64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// ln of the k-matching count q = n!/((n-2k)! 2^k k!)
double log_q_matchings(std::uint64_t n, std::uint64_t k) {
    return lg(n) - lg(n - 2 * k) - static_cast<double>(k) * kLn2 - lg(k);
}

double log_sum_exp(const std::vector<double>& terms) {
    double mx = kNegInf;
    for (double t : terms) mx = std::max(mx, t);
    if (mx == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    return mx + std::log(acc);
}

bool exact_feasible(double log2_bits) { return log2_bits <= kExactBitCap; }

void require_matching_params(Vertex n, std::uint32_t k, Color r) {
    if (r == 0) throw std::invalid_argument("moments: r must be >= 1");
    if (2ull * k > n) throw std::invalid_argument("moments: need 2k <= n");
}

} // namespace

ScalarValue ScalarValue::from_exact(BigRat v) {
    if (v < 0) throw std::invalid_argument("ScalarValue: negative quantity");
    ScalarValue s;
    s.log_value = (v == 0) ? kNegInf : log_big(v);
    s.exact = std::move(v);
    return s;
}

ScalarValue ScalarValue::from_log(double log_v) {
    ScalarValue s;
    s.log_value = log_v;
    return s;
}

ScalarValue ScalarValue::zero() { return from_exact(BigRat(0)); }

bool ScalarValue::is_zero() const { return log_value == kNegInf; }

std::string ScalarValue::log_string() const {
    if (log_value == kNegInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", log_value);
    return buf;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Zero: return "zero";
        case Regime::One: return "one";
        case Regime::Unknown: return "unknown";
    }
    return "?";
}

void RegimeConstants::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("RegimeConstants: epsilon must lie in (0,1)");
    if (!(c4 < 2.718281828459045))
        throw std::invalid_argument("RegimeConstants: c4 must be < e");
    if (!(c7 > 1.0)) throw std::invalid_argument("RegimeConstants: c7 must be > 1");
    if (!(margin > 1.0)) throw std::invalid_argument("RegimeConstants: margin must be > 1");
    if (!(clique_lower_divisor > 0.0))
        throw std::invalid_argument("RegimeConstants: clique divisor must be positive");
}

ScalarValue expected_mono(Vertex n, std::uint32_t k, Color r) {
    require_matching_params(n, k, r);
    const double log_q = log_q_matchings(n, k);
    const double log_r = std::log(static_cast<double>(r));
    const double log_value = log_q - (static_cast<double>(k) - 1.0) * log_r;

    const double bits = (log_q + static_cast<double>(k) * log_r) / kLn2;
    if (!exact_feasible(bits)) return ScalarValue::from_log(log_value);
    const BigInt q = count_k_matchings(n, k);
    return ScalarValue::from_exact(BigRat(q * r, pow_big(BigInt(r), k)));
}

ScalarValue expected_hetero(Vertex n, std::uint32_t k, Color r) {
    require_matching_params(n, k, r);
    if (r < k) return ScalarValue::zero();
    const double log_q = log_q_matchings(n, k);
    const double log_r = std::log(static_cast<double>(r));
    const double log_value = log_q + lg(r) - lg(r - k) - static_cast<double>(k) * log_r;

    const double bits = (log_q + 2.0 * static_cast<double>(k) * log_r) / kLn2;
    if (!exact_feasible(bits)) return ScalarValue::from_log(log_value);
    const BigInt q = count_k_matchings(n, k);
    return ScalarValue::from_exact(BigRat(q * falling_factorial(r, k), pow_big(BigInt(r), k)));
}

ScalarValue expected_mono_perfect(Vertex n, Color r) {
    if (n % 2 != 0) throw std::invalid_argument("expected_mono_perfect: n must be even");
    return expected_mono(n, n / 2, r);
}

ScalarValue delta_ratio_bound_mono(Vertex n, std::uint32_t k, Color r) {
    if (k == 0) throw std::invalid_argument("delta_ratio_bound_mono: k must be >= 1");
    require_matching_params(n, k, r);
    if (k == 1) return ScalarValue::zero(); // empty sum; trivial case

    const double log_r = std::log(static_cast<double>(r));
    const double bits = (lg(n) + static_cast<double>(k) * (log_r + kLn2)) / kLn2;
    if (exact_feasible(bits)) {
        BigRat sum(0);
        for (std::uint32_t s = 1; s < k; ++s) {
            const BigInt num = factorial(n - 2ull * s) * pow_big(BigInt(2), s) *
                               pow_big(BigInt(r), s - 1);
            const BigInt den = factorial(s) * factorial(k - s) * factorial(k - s);
            sum += BigRat(num, den);
        }
        sum *= BigRat(factorial(k) * factorial(k), factorial(n));
        return ScalarValue::from_exact(sum);
    }
    std::vector<double> terms;
    for (std::uint32_t s = 1; s < k; ++s)
        terms.push_back(lg(n - 2ull * s) + s * kLn2 + (s - 1.0) * log_r - lg(s) -
                        2.0 * lg(k - s));
    return ScalarValue::from_log(2.0 * lg(k) - lg(n) + log_sum_exp(terms));
}

ScalarValue delta_ratio_bound_hetero(Vertex n, std::uint32_t k, Color r) {
    if (k == 0) throw std::invalid_argument("delta_ratio_bound_hetero: k must be >= 1");
    require_matching_params(n, k, r);
    if (r < k) throw std::invalid_argument("delta_ratio_bound_hetero: needs r >= k");
    if (k == 1) return ScalarValue::zero();

    const double log_r = std::log(static_cast<double>(r));
    const double bits = (lg(n) + lg(r) + static_cast<double>(k) * (log_r + kLn2)) / kLn2;
    if (exact_feasible(bits)) {
        BigRat sum(0);
        for (std::uint32_t s = 1; s < k; ++s) {
            const BigInt num =
                factorial(n - 2ull * s) * factorial(r - s) * pow_big(BigInt(2) * r, s);
            const BigInt den = factorial(s) * factorial(k - s) * factorial(k - s);
            sum += BigRat(num, den);
        }
        sum *= BigRat(factorial(k) * factorial(k), factorial(n) * factorial(r));
        return ScalarValue::from_exact(sum);
    }
    std::vector<double> terms;
    for (std::uint32_t s = 1; s < k; ++s)
        terms.push_back(lg(n - 2ull * s) + lg(r - s) + s * (kLn2 + log_r) - lg(s) -
                        2.0 * lg(k - s));
    return ScalarValue::from_log(2.0 * lg(k) - lg(n) - lg(r) + log_sum_exp(terms));
}

namespace {

// exact when base^(1/root_exp) is integral; always a log value
ScalarValue root_value(const BigInt& base, std::uint64_t root_exp, double log_base,
                       const BigInt& outer = 1) {
    const double log_value =
        log_big(outer) + log_base / static_cast<double>(root_exp);
    if (base >= 0 && log_base / kLn2 <= kExactBitCap) {
        const BigInt root = iroot(base, root_exp);
        if (pow_big(root, root_exp) == base)
            return ScalarValue::from_exact(BigRat(outer * root));
    }
    return ScalarValue::from_log(log_value);
}

} // namespace

ScalarValue threshold(SubgraphKind kind, Vertex n, std::uint32_t k) {
    switch (kind) {
        case SubgraphKind::Matching: {
            if (k < 2) throw std::invalid_argument("threshold(matching): needs k >= 2");
            if (2ull * k > n) throw std::invalid_argument("threshold(matching): needs 2k <= n");
            const double log_q = log_q_matchings(n, k);
            if ((log_q / kLn2) <= kExactBitCap)
                return root_value(count_k_matchings(n, k), k - 1, log_q);
            return ScalarValue::from_log(log_q / (k - 1.0));
        }
        case SubgraphKind::Clique: {
            if (k < 3) throw std::invalid_argument("threshold(clique): needs k >= 3");
            const std::uint64_t d = static_cast<std::uint64_t>(k) * (k - 1) / 2 - 1;
            const double log_nk = static_cast<double>(k) * std::log(static_cast<double>(n));
            if ((log_nk / kLn2) <= kExactBitCap)
                return root_value(pow_big(BigInt(n), k), d, log_nk);
            return ScalarValue::from_log(log_nk / static_cast<double>(d));
        }
        case SubgraphKind::Tree: {
            if (k < 3) throw std::invalid_argument("threshold(tree): needs k >= 3");
            if (k > n) throw std::invalid_argument("threshold(tree): needs k <= n");
            const double log_binom = lg(n) - lg(k) - lg(n - k);
            if ((log_binom / kLn2) <= kExactBitCap)
                return root_value(binomial(n, k), k - 2, log_binom, BigInt(k));
            return ScalarValue::from_log(std::log(static_cast<double>(k)) +
                                         log_binom / (k - 2.0));
        }
    }
    throw std::invalid_argument("threshold: unknown kind");
}

namespace {

Regime combine(bool zero_fires, bool one_fires) {
    if (zero_fires && one_fires) return Regime::Unknown; // hypotheses disagree here
    if (zero_fires) return Regime::Zero;
    if (one_fires) return Regime::One;
    return Regime::Unknown;
}

Regime classify_mono_matching(Vertex n, std::uint32_t k, Color r, const RegimeConstants& c) {
    if (k == 1) return Regime::One; // a single edge is always monochromatic
    const double log_r = std::log(static_cast<double>(r));
    if (2ull * k == n) {
        // perfect matching regime
        const double nd = n;
        if (static_cast<double>(r) >= nd / c.c4 - kCmpEps) return Regime::Zero;
        const double c5 = std::log(std::log(nd)); // default unbounded function
        if (static_cast<double>(r) <= nd / (std::log(nd) + c5) + kCmpEps) return Regime::One;
        return Regime::Unknown;
    }
    const double t_log = threshold(SubgraphKind::Matching, n, k).log_value;
    const double log_margin = std::log(c.margin);
    const bool one = log_r + log_margin <= t_log + kCmpEps;
    const bool zero = log_r >= t_log + log_margin - kCmpEps;
    return combine(zero, one);
}

Regime classify_hetero_matching(Vertex n, std::uint32_t k, Color r, const RegimeConstants& c) {
    if (r < k) return Regime::Zero; // too few colors, by definition
    if (k == 1) return Regime::One;
    if (static_cast<double>(k) <= std::pow(static_cast<double>(n), 1.0 - c.epsilon) + kCmpEps)
        return Regime::One;
    return Regime::Unknown; // k of order n: open
}

Regime classify_mono_clique(Vertex n, std::uint32_t k, Color r, const RegimeConstants& c) {
    if (k <= 2) return Regime::One;
    if (r == 1) return Regime::One;
    bool zero = false, one = false;
    const double log_r = std::log(static_cast<double>(r));
    const double log_r_n = std::log(static_cast<double>(n)) / log_r;
    if (static_cast<double>(k) >= 2.0 * log_r_n - kCmpEps) zero = true;
    if (static_cast<double>(k) <= log_r_n / c.clique_lower_divisor + kCmpEps) one = true;

    const double t_log = threshold(SubgraphKind::Clique, n, k).log_value;
    const double d = static_cast<double>(k) * (k - 1) / 2.0 - 1.0;
    if (log_r >= std::log(c.margin) + t_log - kCmpEps) zero = true;
    const double one_bound = t_log - (kLn2 + lg(k)) / d; // (1/(2 k!))^(1/(C(k,2)-1)) n^...
    if (log_r <= one_bound + kCmpEps) one = true;
    return combine(zero, one);
}

Regime classify_hetero_clique(Vertex n, std::uint32_t k, Color r, const RegimeConstants& c) {
    if (k <= 2) return Regime::One;
    const std::uint64_t needed = static_cast<std::uint64_t>(k) * (k - 1) / 2;
    if (r < needed) return Regime::Zero;
    const double log_r = std::log(static_cast<double>(r));
    if (log_r >= (4.0 + c.epsilon) * std::log(static_cast<double>(n)) - kCmpEps)
        return Regime::One;
    return Regime::Unknown;
}

Regime classify_mono_tree(Vertex n, std::uint32_t k, Color r, const RegimeConstants& c) {
    if (k <= 2) return Regime::One;
    bool zero = false, one = false;
    const double nd = n;
    const double log_r = std::log(static_cast<double>(r));

    // fixed-r hypothesis, finite form: some class connected w.h.p.
    if (static_cast<double>(r) <= nd / (std::log(nd) + std::log(std::log(nd))) + kCmpEps)
        one = true;

    const double t_log = threshold(SubgraphKind::Tree, n, k).log_value;
    if (log_r >= std::log(c.margin) + t_log - kCmpEps) zero = true;
    // explicit One bound (k/n) C(n,k)^(1/(k-2)) = threshold / n
    if (log_r <= t_log - std::log(nd) + kCmpEps) one = true;
    if (k == n && static_cast<double>(r) >= c.c7 * nd - kCmpEps) zero = true;
    return combine(zero, one);
}

Regime classify_hetero_tree(Vertex n, std::uint32_t k, Color r, const RegimeConstants&) {
    if (k <= 2) return Regime::One;
    if (r < static_cast<std::uint64_t>(k) - 1) return Regime::Zero;
    if (static_cast<double>(k) <= std::log(static_cast<double>(n)) + kCmpEps)
        return Regime::One;
    return Regime::Unknown;
}

} // namespace

Regime classify_regime(const PropertyQuery& q, Vertex n, Color r, const RegimeConstants& consts) {
    consts.validate();
    validate_query(q, n);
    if (r == 0) throw std::invalid_argument("classify_regime: r must be >= 1");
    switch (q.kind) {
        case SubgraphKind::Matching:
            return q.chromatic == Chromatic::Mono
                       ? classify_mono_matching(n, q.k, r, consts)
                       : classify_hetero_matching(n, q.k, r, consts);
        case SubgraphKind::Clique:
            return q.chromatic == Chromatic::Mono ? classify_mono_clique(n, q.k, r, consts)
                                                  : classify_hetero_clique(n, q.k, r, consts);
        case SubgraphKind::Tree:
            return q.chromatic == Chromatic::Mono ? classify_mono_tree(n, q.k, r, consts)
                                                  : classify_hetero_tree(n, q.k, r, consts);
    }
    return Regime::Unknown;
}

MomentReport moment_report(Vertex n, std::uint32_t k, Color r, const RegimeConstants& consts) {
    require_matching_params(n, k, r);
    MomentReport rep;
    rep.n = n;
    rep.k = k;
    rep.r = r;
    rep.q = count_k_matchings(n, k);
    rep.e_mono = expected_mono(n, k, r);
    rep.e_hetero = expected_hetero(n, k, r);
    rep.delta_ratio_mono = delta_ratio_bound_mono(n, k, r);
    if (r >= k) rep.delta_ratio_hetero = delta_ratio_bound_hetero(n, k, r);
    if (k >= 2) rep.threshold_value = threshold(SubgraphKind::Matching, n, k);
    rep.regime = classify_regime({SubgraphKind::Matching, Chromatic::Mono, k}, n, r, consts);
    return rep;
}

namespace {

void put_scalar(nlohmann::json& j, const std::string& name, const ScalarValue& v) {
    if (v.exact) j[name] = to_fraction_string(*v.exact);
    else j[name] = nullptr;
    j[name + "_log"] = v.log_string();
}

} // namespace

std::string moment_report_to_json(const MomentReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["r"] = rep.r;
    j["q"] = rep.q.str();
    put_scalar(j, "e_mono", rep.e_mono);
    put_scalar(j, "e_hetero", rep.e_hetero);
    put_scalar(j, "delta_ratio_bound_mono", rep.delta_ratio_mono);
    if (rep.delta_ratio_hetero) put_scalar(j, "delta_ratio_bound_hetero", *rep.delta_ratio_hetero);
    else j["delta_ratio_bound_hetero"] = nullptr;
    if (rep.threshold_value) put_scalar(j, "threshold_value", *rep.threshold_value);
    else j["threshold_value"] = nullptr;
    j["regime"] = regime_name(rep.regime);
    return j.dump();
}

} // namespace chromathresh
