#include "chromathresh/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chromathresh/detect.hpp"
#include "chromathresh/errors.hpp"
#include "chromathresh/graph.hpp"
#include "chromathresh/moments.hpp"
#include "chromathresh/montecarlo.hpp"
#include "chromathresh/oracle.hpp"
#include "chromathresh/verify.hpp"

namespace chromathresh {

namespace {

using nlohmann::json;

std::uint64_t env_master_seed() {
    const char* env = std::getenv("CHROMATHRESH_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        return 0;
    }
}

PropertyQuery parse_property_or_throw(const std::string& label, std::uint32_t k) {
    const auto q = parse_property_label(label, k);
    if (!q)
        throw std::invalid_argument(
            "unknown property '" + label +
            "' (expected {mono,hetero}-{matching,clique,tree})");
    return *q;
}

// Decimal string -> exact rational, e.g. "0.1" -> 1/10. Used for threshold
// multipliers so that ceil(0.1 * T) is computed without binary-float fuzz.
BigRat parse_decimal(const std::string& s) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    const auto dot = t.find('.');
    std::string whole = dot == std::string::npos ? t : t.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (whole.find_first_not_of("0123456789") != std::string::npos ||
        frac.find_first_not_of("0123456789") != std::string::npos || (whole.empty() && frac.empty()))
        throw std::invalid_argument("bad decimal value '" + s + "'");
    BigInt num(whole);
    for (char c : frac) num = num * 10 + (c - '0');
    BigRat v(num, pow_big(BigInt(10), frac.size()));
    return neg ? -v : v;
}

BigInt ceil_rat(const BigRat& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << text;
}

struct ConstantFlags {
    RegimeConstants consts;
    void attach(CLI::App* cmd) {
        cmd->add_option("--margin", consts.margin, "finite-n multiplicative margin for >>/<<");
        cmd->add_option("--epsilon", consts.epsilon, "epsilon in (0,1) for side conditions");
        cmd->add_option("--c4", consts.c4, "perfect-matching zero-branch constant (< e)");
        cmd->add_option("--c7", consts.c7, "spanning-tree zero-branch constant (> 1)");
        cmd->add_option("--clique-divisor", consts.clique_lower_divisor,
                        "divisor in the fixed-r clique one-branch");
    }
};

json scalar_json(const ScalarValue& v) {
    json j;
    j["exact"] = v.exact ? json(to_fraction_string(*v.exact)) : json(nullptr);
    j["log"] = v.log_string();
    return j;
}

// ------------------------------------------------------------------ sample

int cmd_sample(Vertex n, Color r, std::uint64_t seed, std::uint64_t trial,
               const std::string& format, const std::string& out_path, std::ostream& out) {
    const SeedSpec spec{seed, trial};
    const ColoredGraph g = sample_coloring(n, r, spec);
    if (format == "json") {
        write_output(to_json_string(g, &spec) + "\n", out_path, out);
    } else {
        write_output(to_text(g), out_path, out);
    }
    return 0;
}

// ------------------------------------------------------------------ detect

int cmd_detect(const std::string& property, std::uint32_t k, const std::string& in_path,
               Vertex n, Color r, std::uint64_t seed, std::uint64_t trial,
               std::uint64_t budget, const std::string& format, std::ostream& out) {
    const PropertyQuery q = parse_property_or_throw(property, k);
    ColoredGraph g;
    if (!in_path.empty()) {
        std::ifstream f(in_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open coloring file '" + in_path + "'");
        std::stringstream buffer;
        buffer << f.rdbuf();
        g = from_text(buffer.str());
    } else {
        if (n == 0 || r == 0)
            throw std::invalid_argument("detect: provide --in FILE or both --n and --r");
        g = sample_coloring(n, r, SeedSpec{seed, trial});
    }
    DetectOptions opts;
    opts.budget = budget;
    const DetectResult res = detect(g, q, opts);

    if (format == "text") {
        out << (res.exists ? "true" : "false") << "\n";
        if (res.witness) {
            for (EdgeIndex e : res.witness->edges) {
                const auto [u, v] = edge_endpoints(e, g.n);
                out << u << " " << v << " " << g.colors[e] << "\n";
            }
        }
        return 0;
    }
    json j;
    j["property"] = property_label(q);
    j["k"] = q.k;
    j["n"] = g.n;
    j["r"] = g.r;
    j["exists"] = res.exists;
    j["witness"] = res.witness ? json::parse(witness_to_json(g, q, *res.witness)) : json(nullptr);
    out << j.dump() << "\n";
    return 0;
}

// ----------------------------------------------------------------- moments

int cmd_moments(Vertex n, std::uint32_t k, Color r, const RegimeConstants& consts,
                const std::string& format, std::ostream& out) {
    const MomentReport rep = moment_report(n, k, r, consts);
    if (format == "text") {
        out << "q = " << rep.q.str() << "\n";
        auto line = [&](const char* name, const ScalarValue& v) {
            out << name << " = " << (v.exact ? to_fraction_string(*v.exact) : std::string("(log only)"))
                << "  log=" << v.log_string() << "\n";
        };
        line("e_mono", rep.e_mono);
        line("e_hetero", rep.e_hetero);
        line("delta_ratio_bound_mono", rep.delta_ratio_mono);
        if (rep.delta_ratio_hetero) line("delta_ratio_bound_hetero", *rep.delta_ratio_hetero);
        if (rep.threshold_value) line("threshold", *rep.threshold_value);
        out << "regime = " << regime_name(rep.regime) << "\n";
        return 0;
    }
    out << moment_report_to_json(rep) << "\n";
    return 0;
}

// ------------------------------------------------------------------- exact

int cmd_exact(Vertex n, Color r, const std::string& property, std::uint32_t k,
              const std::string& coloring_cap, std::uint64_t work_cap, std::uint64_t pair_cap,
              const std::string& format, std::ostream& out) {
    const PropertyQuery q = parse_property_or_throw(property, k);
    OracleCaps caps;
    if (!coloring_cap.empty()) caps.coloring_cap = BigInt(coloring_cap);
    caps.work_cap = work_cap;
    caps.pair_cap = pair_cap;
    const ExactStats stats = exact_stats(n, r, q, caps);
    if (format == "text") {
        out << "total_colorings = " << stats.total_colorings.str() << "\n"
            << "colorings_with_property = " << stats.colorings_with_property.str() << "\n"
            << "probability = " << to_fraction_string(stats.probability) << "\n"
            << "expected_count = " << to_fraction_string(stats.expected_count) << "\n"
            << "delta = " << to_fraction_string(stats.delta) << "\n";
        return 0;
    }
    json j;
    j["n"] = n;
    j["r"] = r;
    j["property"] = property_label(q);
    j["k"] = q.k;
    j["total_colorings"] = stats.total_colorings.str();
    j["colorings_with_property"] = stats.colorings_with_property.str();
    j["probability"] = to_fraction_string(stats.probability);
    j["expected_count"] = to_fraction_string(stats.expected_count);
    j["delta"] = to_fraction_string(stats.delta);
    out << j.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const std::string& property, std::uint32_t k, Vertex n, Color r,
                 const RegimeConstants& consts, const std::string& format, std::ostream& out) {
    const PropertyQuery q = parse_property_or_throw(property, k);
    const Regime regime = classify_regime(q, n, r, consts);
    if (format == "text") {
        out << regime_name(regime) << "\n";
        return 0;
    }
    json j;
    j["property"] = property_label(q);
    j["n"] = n;
    j["k"] = k;
    j["r"] = r;
    j["regime"] = regime_name(regime);
    out << j.dump() << "\n";
    return 0;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& property, Vertex n, std::uint32_t k,
              const std::vector<std::string>& points, const std::string& multipliers,
              std::uint64_t trials, std::uint64_t seed, double z, unsigned threads,
              std::uint64_t budget, const RegimeConstants& consts, const std::string& format,
              const std::string& out_path, std::ostream& out) {
    const PropertyQuery q = parse_property_or_throw(property, k);

    std::vector<GridPoint> grid;
    for (const std::string& p : points) {
        unsigned pn = 0, pk = 0;
        unsigned long long pr = 0;
        if (std::sscanf(p.c_str(), "%u,%u,%llu", &pn, &pk, &pr) != 3)
            throw std::invalid_argument("bad --point '" + p + "', expected n,k,r");
        grid.push_back(GridPoint{pn, pk, pr});
    }
    if (!multipliers.empty()) {
        if (n == 0 || k == 0)
            throw std::invalid_argument("--r-multipliers needs --n and --k");
        const ScalarValue t = threshold(q.kind, n, k);
        std::stringstream ss(multipliers);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const BigRat mult = parse_decimal(item);
            if (mult <= 0) throw std::invalid_argument("multiplier must be positive");
            BigInt r_point;
            if (t.exact) {
                r_point = ceil_rat(mult * *t.exact);
            } else {
                const double log_r =
                    t.log_value + std::log(mult.convert_to<double>());
                r_point = BigInt(static_cast<std::uint64_t>(std::ceil(std::exp(log_r))));
            }
            if (r_point < 1) r_point = 1;
            if (r_point > std::numeric_limits<std::uint64_t>::max())
                throw ResourceError("sweep: r exceeds the sampler's 64-bit color range");
            GridPoint pt{n, k, r_point.convert_to<std::uint64_t>()};
            grid.push_back(pt);
        }
    }
    if (grid.empty()) throw std::invalid_argument("sweep: no grid points given");

    TrialPlan base;
    base.query = q;
    base.trials = trials;
    base.master_seed = seed;
    base.z = z;
    RunOptions opts;
    opts.threads = threads;
    opts.detect.budget = budget;

    const auto records = sweep(base, grid, opts, consts);

    std::ostringstream body;
    if (format == "csv") {
        body << sweep_csv_header() << "\n";
        for (const auto& rec : records) body << sweep_record_to_csv(rec) << "\n";
    } else {
        json arr = json::array();
        for (const auto& rec : records) arr.push_back(json::parse(sweep_record_to_json(rec)));
        body << arr.dump() << "\n";
    }
    write_output(body.str(), out_path, out);
    return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(std::uint64_t graphs, Vertex max_n, std::uint64_t seed, bool deep,
               std::ostream& out) {
    VerifyOptions opts;
    opts.graphs = graphs;
    opts.max_n = max_n;
    opts.master_seed = seed;
    opts.deep = deep;
    const VerifyReport report = run_verification(opts, out);
    if (!report.ok()) {
        out << "verification FAILED\n";
        return 4;
    }
    out << "verification OK\n";
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"chromathresh: monochromatic/heterochromatic subgraph laboratory for "
                 "uniformly edge-colored complete graphs"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_master_seed();

    // sample
    auto* sample = app.add_subcommand("sample", "sample a uniform coloring of K_n");
    Vertex s_n = 0;
    Color s_r = 0;
    std::uint64_t s_seed = default_seed, s_trial = 0;
    std::string s_format = "text", s_out;
    sample->add_option("--n", s_n, "vertex count")->required();
    sample->add_option("--r", s_r, "color count")->required();
    sample->add_option("--seed", s_seed, "master seed (default: CHROMATHRESH_SEED or 0)");
    sample->add_option("--trial", s_trial, "trial index");
    sample->add_option("--format", s_format, "text|json (default text)")
        ->check(CLI::IsMember({"text", "json"}));
    sample->add_option("--out", s_out, "write to file instead of stdout");

    // detect
    auto* det = app.add_subcommand("detect", "decide property existence on one coloring");
    std::string d_property, d_in, d_format = "json";
    std::uint32_t d_k = 1;
    Vertex d_n = 0;
    Color d_r = 0;
    std::uint64_t d_seed = default_seed, d_trial = 0, d_budget = DetectOptions{}.budget;
    det->add_option("--property", d_property, "property label, e.g. mono-matching")->required();
    det->add_option("--k", d_k, "subgraph size parameter")->required();
    det->add_option("--in", d_in, "coloring file (graph_model text format)");
    det->add_option("--n", d_n, "vertex count (when sampling)");
    det->add_option("--r", d_r, "color count (when sampling)");
    det->add_option("--seed", d_seed, "master seed");
    det->add_option("--trial", d_trial, "trial index");
    det->add_option("--budget", d_budget, "search node budget");
    det->add_option("--format", d_format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // moments
    auto* mom = app.add_subcommand("moments", "closed-form moments for k-matchings");
    Vertex m_n = 0;
    std::uint32_t m_k = 1;
    Color m_r = 0;
    std::string m_format = "json";
    ConstantFlags m_consts;
    mom->add_option("--n", m_n, "vertex count")->required();
    mom->add_option("--k", m_k, "matching size")->required();
    mom->add_option("--r", m_r, "color count")->required();
    m_consts.attach(mom);
    mom->add_option("--format", m_format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // exact
    auto* ex = app.add_subcommand("exact", "exhaustive coloring-space statistics");
    Vertex e_n = 0;
    Color e_r = 0;
    std::string e_property;
    std::uint32_t e_k = 1;
    std::string e_coloring_cap;
    std::uint64_t e_work_cap = OracleCaps{}.work_cap, e_pair_cap = OracleCaps{}.pair_cap;
    std::string e_format = "json";
    ex->add_option("--n", e_n, "vertex count")->required();
    ex->add_option("--r", e_r, "color count")->required();
    ex->add_option("--property", e_property, "property label")->required();
    ex->add_option("--k", e_k, "subgraph size parameter")->required();
    ex->add_option("--coloring-cap", e_coloring_cap, "max colorings (default 2^25)");
    ex->add_option("--work-cap", e_work_cap, "max candidate subgraphs");
    ex->add_option("--pair-cap", e_pair_cap, "max ordered pairs in delta");
    ex->add_option("--format", e_format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // classify
    auto* cl = app.add_subcommand("classify", "predict the asymptotic regime");
    std::string c_property, c_format = "json";
    std::uint32_t c_k = 1;
    Vertex c_n = 0;
    Color c_r = 0;
    ConstantFlags c_consts;
    cl->add_option("--property", c_property, "property label")->required();
    cl->add_option("--k", c_k, "subgraph size parameter")->required();
    cl->add_option("--n", c_n, "vertex count")->required();
    cl->add_option("--r", c_r, "color count")->required();
    c_consts.attach(cl);
    cl->add_option("--format", c_format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // sweep
    auto* sw = app.add_subcommand("sweep", "Monte Carlo estimates over a parameter grid");
    std::string w_property, w_multipliers, w_format = "json", w_out;
    Vertex w_n = 0;
    std::uint32_t w_k = 0;
    std::vector<std::string> w_points;
    std::uint64_t w_trials = 1000, w_seed = default_seed, w_budget = DetectOptions{}.budget;
    double w_z = 1.959964;
    unsigned w_threads = 1;
    ConstantFlags w_consts;
    sw->add_option("--property", w_property, "property label")->required();
    sw->add_option("--point", w_points, "grid point n,k,r (repeatable)");
    sw->add_option("--n", w_n, "base n for --r-multipliers");
    sw->add_option("--k", w_k, "base k for --r-multipliers");
    sw->add_option("--r-multipliers", w_multipliers,
                   "comma list; r = ceil(multiplier * threshold(n,k))");
    sw->add_option("--trials", w_trials, "trials per grid point");
    sw->add_option("--seed", w_seed, "master seed");
    sw->add_option("--z", w_z, "confidence multiplier");
    sw->add_option("--threads", w_threads, "worker threads per point");
    sw->add_option("--budget", w_budget, "detector node budget");
    w_consts.attach(sw);
    sw->add_option("--format", w_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sw->add_option("--out", w_out, "write to file instead of stdout");

    // verify
    auto* ver = app.add_subcommand("verify", "cross-check detectors and formulas against the oracle");
    std::uint64_t v_graphs = 300, v_seed = default_seed;
    Vertex v_max_n = 10;
    bool v_deep = false;
    ver->add_option("--graphs", v_graphs, "random graphs to test");
    ver->add_option("--max-n", v_max_n, "largest vertex count");
    ver->add_option("--seed", v_seed, "master seed");
    ver->add_flag("--deep", v_deep, "include the n=6 coloring spaces");

    std::vector<const char*> argv;
    argv.push_back("chromathresh");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    try {
        if (sample->parsed())
            return cmd_sample(s_n, s_r, s_seed, s_trial, s_format, s_out, out);
        if (det->parsed())
            return cmd_detect(d_property, d_k, d_in, d_n, d_r, d_seed, d_trial, d_budget,
                              d_format, out);
        if (mom->parsed()) return cmd_moments(m_n, m_k, m_r, m_consts.consts, m_format, out);
        if (ex->parsed())
            return cmd_exact(e_n, e_r, e_property, e_k, e_coloring_cap, e_work_cap, e_pair_cap,
                             e_format, out);
        if (cl->parsed())
            return cmd_classify(c_property, c_k, c_n, c_r, c_consts.consts, c_format, out);
        if (sw->parsed())
            return cmd_sweep(w_property, w_n, w_k, w_points, w_multipliers, w_trials, w_seed,
                             w_z, w_threads, w_budget, w_consts.consts, w_format, w_out, out);
        if (ver->parsed()) return cmd_verify(v_graphs, v_max_n, v_seed, v_deep, out);
        err << "usage error: no subcommand given\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace chromathresh
