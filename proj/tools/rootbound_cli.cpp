#include "rootbound/bounds.hpp"
#include "rootbound/extremal.hpp"
#include "rootbound/matrix.hpp"
#include "rootbound/partition.hpp"
#include "rootbound/rooted.hpp"
#include "rootbound/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace rootbound;

namespace {

// Exit codes: 0 success, 1 input error, 2 hypothesis/certificate failure.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotEstablished = 2;

struct RunContext {
    double tol = kDefaultSpectralTol;
    long max_iter = kDefaultSpectralMaxIter;
    long seed = 0;  // accepted for harness compatibility; all paths are deterministic
    std::vector<std::string> digest_parts;
    std::vector<std::string> warnings;
};

uint64_t fnv1a64(const std::string& bytes, uint64_t h = 1469598103934665603ull) {
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::vector<std::string>& parts) {
    uint64_t h = 1469598103934665603ull;
    for (const auto& p : parts) {
        h = fnv1a64(p, h);
        h = fnv1a64(std::string(1, '\0'), h);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Matrix load_matrix(RunContext& ctx, const std::string& path) {
    std::string text = slurp(path);
    ctx.digest_parts.push_back(text);
    std::istringstream in(text);
    return parse_matrix(in);
}

Partition load_partition(RunContext& ctx, const std::string& path) {
    std::string text = slurp(path);
    ctx.digest_parts.push_back(text);
    return parse_partition_json(text);
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

// Serializer with a fixed 17-significant-digit float format so identical
// inputs produce byte-identical reports.
void dump_json(const json& j, std::ostream& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ',';
                first = false;
                out << json(it.key()).dump() << ':';
                dump_json(it.value(), out);
            }
            out << '}';
            break;
        }
        case json::value_t::array: {
            out << '[';
            bool first = true;
            for (const auto& item : j) {
                if (!first) out << ',';
                first = false;
                dump_json(item, out);
            }
            out << ']';
            break;
        }
        case json::value_t::number_float:
            out << format_double(j.get<double>());
            break;
        default:
            out << j.dump();
    }
}

int emit_report(const std::string& command, const RunContext& ctx, const json& result,
                int code) {
    json report;
    report["command"] = command;
    report["inputs_digest"] = digest_hex(ctx.digest_parts);
    report["result"] = result;
    report["warnings"] = ctx.warnings;
    dump_json(report, std::cout);
    std::cout << '\n';
    return code;
}

const char* equality_name(EqualityDiagnosis d) {
    switch (d) {
        case EqualityDiagnosis::equality: return "equality";
        case EqualityDiagnosis::strict: return "strict";
        default: return "undetermined";
    }
}

json rooted_violations_json(const std::vector<RootedViolation>& violations) {
    json out = json::array();
    for (const auto& v : violations) {
        json item;
        item["condition"] = std::string(1, v.condition);
        item["row"] = v.row;
        item["col"] = v.col;
        item["lhs"] = v.lhs;
        item["rhs"] = v.rhs;
        out.push_back(std::move(item));
    }
    return out;
}

json hypothesis_json(const HypothesisReport& rep) {
    json out = json::array();
    for (const auto& v : rep.violations) {
        json item;
        item["block_row"] = v.block_row;
        item["block_col"] = v.block_col;
        item["value"] = v.value;
        item["limit"] = v.limit;
        out.push_back(std::move(item));
    }
    return out;
}

int run_spectral_radius(RunContext& ctx, const std::string& matrix_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    SpectralResult r = spectral_radius_nonneg(c, ctx.tol, ctx.max_iter);
    json result;
    result["value"] = r.value;
    result["cw_lower"] = r.cw_lower;
    result["cw_upper"] = r.cw_upper;
    result["method"] = r.method == SpectralMethod::power ? "power" : "dense-fallback";
    result["iterations"] = r.iterations;
    return emit_report("spectral radius", ctx, result, kExitOk);
}

int run_spectral_rho_r(RunContext& ctx, const std::string& matrix_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    json result;
    RootednessResult rr = is_rooted_matrix(c);
    result["rooted"] = rr.rooted();
    if (rr.rooted()) {
        result["d"] = rr.certificate->d;
        RhoR rho = rho_r_rooted(c, ctx.tol, ctx.max_iter);
        result["value"] = *rho.value;
    } else {
        result["d"] = nullptr;
        RhoR rho = rho_r_general(c);
        if (rho.value) {
            result["value"] = *rho.value;
        } else {
            result["value"] = "infinity";
            ctx.warnings.push_back("matrix has no real eigenvalue");
        }
    }
    return emit_report("spectral rho-r", ctx, result, kExitOk);
}

int run_rooted_check(RunContext& ctx, const std::string& matrix_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    RootednessResult rr = is_rooted_matrix(c);
    json result;
    result["rooted"] = rr.rooted();
    if (rr.rooted()) {
        result["d"] = rr.certificate->d;
        result["transformed"] = matrix_json(rr.certificate->transformed);
    } else {
        result["d"] = nullptr;
    }
    result["violations"] = rooted_violations_json(rr.violations);
    return emit_report("rooted-check", ctx, result, rr.rooted() ? kExitOk : kExitNotEstablished);
}

int run_quotient(RunContext& ctx, const std::string& matrix_path,
                 const std::string& partition_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    Partition p = load_partition(ctx, partition_path);
    EquitabilityReport eq = is_equitable(c, p);
    json result;
    result["quotient"] = matrix_json(eq.quotient);
    result["equitable"] = eq.equitable;
    json violations = json::array();
    for (const auto& v : eq.violations) {
        json item;
        item["row"] = v.row;
        item["block"] = v.block;
        item["value"] = v.value;
        item["expected"] = v.expected;
        violations.push_back(std::move(item));
    }
    result["violations"] = violations;
    return emit_report("quotient", ctx, result, kExitOk);
}

int run_bound_quotient(RunContext& ctx, BoundDirection dir, const std::string& matrix_path,
                       const std::string& partition_path,
                       const std::optional<std::string>& m_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    Partition p = load_partition(ctx, partition_path);
    Matrix m;
    if (m_path) {
        m = load_matrix(ctx, *m_path);
    } else {
        if (dir == BoundDirection::lower)
            throw std::invalid_argument("bound lower: --m is required");
        CanonicalM cm = canonical_m(c, p);
        m = cm.m;
        ctx.warnings.push_back("m not supplied; using the canonical block-maximum matrix");
    }
    BoundReport rep =
        dir == BoundDirection::upper ? upper_bound(c, p, m) : lower_bound(c, p, m);
    json result;
    result["direction"] = dir == BoundDirection::upper ? "upper" : "lower";
    result["bound"] = rep.bound ? json(*rep.bound) : json(nullptr);
    result["m"] = matrix_json(rep.m_used);
    result["m_rooted"] = rep.m_rooted;
    result["m_violations"] = rooted_violations_json(rep.m_violations);
    result["hypothesis_ok"] = rep.hypotheses.ok;
    result["hypothesis_violations"] = hypothesis_json(rep.hypotheses);
    result["equality"] = equality_name(rep.equality);
    result["equality_detail"] = rep.equality_detail;
    result["eigenvector_u"] = vector_json(rep.eigenvector_u);
    result["equitable_form_applicable"] = rep.equitable_form_applicable;
    result["equitable_form_equality"] =
        rep.equitable_form_equality ? json(*rep.equitable_form_equality) : json(nullptr);
    return emit_report(dir == BoundDirection::upper ? "bound upper" : "bound lower", ctx, result,
                       rep.established() ? kExitOk : kExitNotEstablished);
}

int run_bound_duan_zhou(RunContext& ctx, const std::string& matrix_path, int ell, bool refined) {
    Matrix c = load_matrix(ctx, matrix_path);
    json result;
    result["ell"] = ell;
    result["refined"] = refined;
    if (refined) {
        result["bound"] = refined_duan_zhou(c, ell);
    } else {
        DuanZhouReport rep = duan_zhou_bound(c, ell);
        result["bound"] = rep.bound;
        result["permutation"] = rep.permutation;
        result["equality"] = rep.equality_known ? json(rep.equality) : json(nullptr);
        result["equality_detail"] = rep.detail;
    }
    return emit_report("bound duan-zhou", ctx, result, kExitOk);
}

int run_bound_entry_sum(RunContext& ctx, const std::string& matrix_path) {
    Matrix c = load_matrix(ctx, matrix_path);
    EntrySumReport rep = entrysum_bound(c);
    json result;
    result["bound"] = rep.bound;
    result["d"] = rep.d;
    result["f"] = rep.f;
    result["entry_sum"] = rep.m;
    result["equality"] = rep.equality;
    result["k"] = rep.k ? json(*rep.k) : json(nullptr);
    return emit_report("bound entry-sum", ctx, result, kExitOk);
}

int run_bound_stanley(RunContext& ctx, long e) {
    ctx.digest_parts.push_back(std::to_string(e));
    json result;
    result["e"] = e;
    result["bound"] = stanley_bound(e);
    return emit_report("bound stanley", ctx, result, kExitOk);
}

int run_construct(RunContext& ctx, const std::string& which, const Matrix& m) {
    json result;
    result["matrix"] = matrix_json(m);
    result["matrix_text"] = format_matrix(m);
    result["ones"] = static_cast<long>(std::lround(m.sum()));
    return emit_report(which, ctx, result, kExitOk);
}

int run_verify(RunContext& ctx, const std::string& which, int n, int e, bool zero_trace,
               long budget, bool full) {
    ctx.digest_parts.push_back(std::to_string(n));
    ctx.digest_parts.push_back(std::to_string(e));
    ctx.digest_parts.push_back(std::to_string(budget));
    ExtremalParams params = ExtremalParams::from_edges(n, e, zero_trace);
    SearchReport rep = verify_conjecture(params, budget);
    json result;
    result["n"] = n;
    result["e"] = e;
    result["c"] = params.c;
    result["t"] = params.t;
    result["zero_trace"] = zero_trace;
    result["candidates_examined"] = rep.candidates_examined;
    result["max_rho"] = rep.max_rho;
    result["maximizer"] = matrix_json(rep.maximizer);
    result["maximizer_text"] = format_matrix(rep.maximizer);
    result["co_maximizers"] = static_cast<long>(rep.co_maximizers.size());
    result["matches_a0"] = rep.matches_a0;
    result["matches_a0_prime"] = rep.matches_a0_prime;
    result["runner_up_rho"] = rep.runner_up_rho ? json(*rep.runner_up_rho) : json(nullptr);
    result["runner_up_matches_a0"] = rep.runner_up_matches_a0;
    if (full) {
        double oracle = full_search_max_rho(n, e, zero_trace);
        result["full_search_max_rho"] = oracle;
        if (std::abs(oracle - rep.max_rho) > 1e-9)
            ctx.warnings.push_back("class maximum differs from the unrestricted search");
    }
    return emit_report(which, ctx, result, kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified spectral-radius bounds for nonnegative matrices"};
    app.require_subcommand(1);

    RunContext ctx;
    app.add_option("--tol", ctx.tol, "iteration tolerance");
    app.add_option("--max-iter", ctx.max_iter, "iteration cap");
    app.add_option("--seed", ctx.seed, "seed (reports are deterministic regardless)");

    std::string matrix_path, partition_path, m_path;
    int ell = 1, n = 0, e = 0, c = 0, t = 0;
    long stanley_e = 0, budget = 1'000'000;
    bool refined = false, zero_trace = false, full = false;

    auto* spectral = app.add_subcommand("spectral", "spectral radius and largest real eigenvalue");
    spectral->require_subcommand(1);
    auto* sp_radius = spectral->add_subcommand("radius", "spectral radius of a nonnegative matrix");
    sp_radius->add_option("--matrix", matrix_path)->required();
    auto* sp_rho = spectral->add_subcommand("rho-r", "largest real eigenvalue");
    sp_rho->add_option("--matrix", matrix_path)->required();

    auto* rooted_check = app.add_subcommand("rooted-check", "rootedness certificate");
    rooted_check->add_option("--matrix", matrix_path)->required();

    auto* quotient = app.add_subcommand("quotient", "block quotient and equitability");
    quotient->add_option("--matrix", matrix_path)->required();
    quotient->add_option("--partition", partition_path)->required();

    auto* bound = app.add_subcommand("bound", "certified bounds");
    bound->require_subcommand(1);
    auto* b_upper = bound->add_subcommand("upper", "upper bound via a rooted block matrix");
    b_upper->add_option("--matrix", matrix_path)->required();
    b_upper->add_option("--partition", partition_path)->required();
    b_upper->add_option("--m", m_path);
    auto* b_lower = bound->add_subcommand("lower", "lower bound via a rooted block matrix");
    b_lower->add_option("--matrix", matrix_path)->required();
    b_lower->add_option("--partition", partition_path)->required();
    b_lower->add_option("--m", m_path);
    auto* b_dz = bound->add_subcommand("duan-zhou", "sorted row-sum level bound");
    b_dz->add_option("--matrix", matrix_path)->required();
    b_dz->add_option("--ell", ell)->required();
    b_dz->add_flag("--refined", refined);
    auto* b_es = bound->add_subcommand("entry-sum", "entry-sum bound");
    b_es->add_option("--matrix", matrix_path)->required();
    auto* b_st = bound->add_subcommand("stanley", "edge-count bound");
    b_st->add_option("--e", stanley_e)->required();

    auto* construct = app.add_subcommand("construct", "extremal matrix constructions");
    construct->require_subcommand(1);
    auto* c_a0 = construct->add_subcommand("a0", "extremal block with split corner");
    c_a0->add_option("--c", c)->required();
    c_a0->add_option("--t", t)->required();
    c_a0->add_option("--n", n)->required();
    c_a0->add_flag("--zero-trace", zero_trace);
    auto* c_a0p = construct->add_subcommand("a0-prime", "exceptional block for t = 2c-3");
    c_a0p->add_option("--c", c)->required();
    c_a0p->add_option("--n", n)->required();

    auto* verify = app.add_subcommand("verify", "exhaustive desk-scale verification");
    verify->require_subcommand(1);
    auto* v_cc = verify->add_subcommand("conjecture-c", "sweep the staircase class");
    v_cc->add_option("--n", n)->required();
    v_cc->add_option("--e", e)->required();
    v_cc->add_option("--budget", budget);
    v_cc->add_flag("--full", full, "cross-check against all 0/1 matrices (n <= 3)");
    auto* v_zt = verify->add_subcommand("zero-trace", "sweep the zero-trace staircase class");
    v_zt->add_option("--n", n)->required();
    v_zt->add_option("--e", e)->required();
    v_zt->add_option("--budget", budget);
    v_zt->add_flag("--full", full, "cross-check against all 0/1 matrices (n <= 3)");

    CLI11_PARSE(app, argc, argv);

    for (int i = 1; i < argc; ++i) ctx.digest_parts.push_back(argv[i]);

    try {
        if (sp_radius->parsed()) return run_spectral_radius(ctx, matrix_path);
        if (sp_rho->parsed()) return run_spectral_rho_r(ctx, matrix_path);
        if (rooted_check->parsed()) return run_rooted_check(ctx, matrix_path);
        if (quotient->parsed()) return run_quotient(ctx, matrix_path, partition_path);
        if (b_upper->parsed())
            return run_bound_quotient(ctx, BoundDirection::upper, matrix_path, partition_path,
                                      m_path.empty() ? std::nullopt
                                                     : std::optional<std::string>(m_path));
        if (b_lower->parsed())
            return run_bound_quotient(ctx, BoundDirection::lower, matrix_path, partition_path,
                                      m_path.empty() ? std::nullopt
                                                     : std::optional<std::string>(m_path));
        if (b_dz->parsed()) return run_bound_duan_zhou(ctx, matrix_path, ell, refined);
        if (b_es->parsed()) return run_bound_entry_sum(ctx, matrix_path);
        if (b_st->parsed()) return run_bound_stanley(ctx, stanley_e);
        if (c_a0->parsed()) {
            int edges = (zero_trace ? c * (c - 1) : c * c) + t;
            return run_construct(ctx, "construct a0",
                                 construct_a0(ExtremalParams{n, edges, c, t, zero_trace}));
        }
        if (c_a0p->parsed()) return run_construct(ctx, "construct a0-prime",
                                                  construct_a0_prime(c, n));
        if (v_cc->parsed())
            return run_verify(ctx, "verify conjecture-c", n, e, false, budget, full);
        if (v_zt->parsed())
            return run_verify(ctx, "verify zero-trace", n, e, true, budget, full);
        std::cerr << "error: no subcommand selected\n";
        return kExitInput;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInput;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInput;
    }
}
