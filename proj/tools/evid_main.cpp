// Command line front end: single evidence values, sweeps, iso-E contours,
// transition points and the verification suite, as CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 computation error,
// 3 verification failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evid/evid.hpp"

namespace {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonOpts {
    std::string cls;
    std::vector<double> theta2;
    std::string format = "csv";
    double tol = 1e-10;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--class", o.cls, "contrast class: 1a, 1b, 2a or 2b")
        ->required()
        ->check(CLI::IsMember({"1a", "1b", "2a", "2b"}));
    cmd->add_option("--theta2", o.theta2, "theta2 interval bounds L R (class 2b only)")
        ->expected(2);
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", o.tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
}

evid::HypothesisContrast make_hc(const CommonOpts& o) {
    if (o.cls == "2b") {
        if (o.theta2.size() != 2) throw UsageError("--theta2 L R is required for class 2b");
        return evid::HypothesisContrast::class_2b(o.theta2[0], o.theta2[1]);
    }
    if (!o.theta2.empty()) throw UsageError("--theta2 is only meaningful for class 2b");
    if (o.cls == "1a") return evid::HypothesisContrast::class_1a();
    if (o.cls == "1b") return evid::HypothesisContrast::class_1b();
    return evid::HypothesisContrast::class_2a();
}

evid::QuadratureConfig make_cfg(const CommonOpts& o) {
    evid::QuadratureConfig cfg;
    cfg.rel_tol = o.tol;
    return cfg;
}

// "lo:hi:steps" -> steps points spaced evenly over [lo, hi], inclusive.
std::vector<double> parse_range(const std::string& s, const char* flag) {
    double lo, hi;
    long steps;
    char tail;
    if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &steps, &tail) != 3 || steps < 1)
        throw UsageError(std::string(flag) + " expects lo:hi:steps with steps >= 1");
    if (steps == 1) return {lo};
    std::vector<double> out;
    out.reserve(steps);
    for (long i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
    return out;
}

void print_rows(const CommonOpts& o, const std::vector<evid::OutputRow>& rows) {
    if (o.format == "json")
        evid::emit_json(std::cout, rows);
    else
        evid::emit_csv(std::cout, rows);
}

int run_evidence(const CommonOpts& o, double n, std::optional<double> x,
                 std::optional<double> ratio) {
    if (x.has_value() == ratio.has_value())
        throw UsageError("evidence: give exactly one of --x and --ratio");
    auto hc = make_hc(o);
    auto cfg = make_cfg(o);
    evid::Observation obs = x ? evid::Observation(n, *x) : evid::detail::obs_from_ratio(n, *ratio);
    std::vector<evid::OutputRow> rows;
    try {
        rows.push_back(evid::make_row(evid::evidence_E(hc, obs, cfg)));
    } catch (const std::exception& ex) {
        evid::OutputRow row;
        row.class_tag = hc.tag();
        row.theta2_left = hc.theta2().lo;
        row.theta2_right = hc.theta2().hi;
        row.n = obs.n;
        row.x = obs.x;
        row.ratio = obs.ratio();
        row.error = ex.what();
        print_rows(o, {row});
        return 2;
    }
    print_rows(o, rows);
    return 0;
}

int run_sweep(const CommonOpts& o, const std::vector<double>& n_grid,
              const std::vector<double>& ratio_grid) {
    auto hc = make_hc(o);
    auto cfg = make_cfg(o);
    auto sweep = evid::sweep_evidence(hc, n_grid, ratio_grid, cfg);
    std::vector<evid::OutputRow> rows;
    rows.reserve(sweep.size());
    for (const auto& sr : sweep) rows.push_back(evid::make_row(hc, sr));
    print_rows(o, rows);
    return 0;
}

int run_iso(const CommonOpts& o, double target_e, const std::vector<double>& ratio_grid) {
    auto hc = make_hc(o);
    auto cfg = make_cfg(o);
    evid::ContourSpec spec;
    spec.target_e = target_e;
    spec.ratios = ratio_grid;
    auto contour = evid::iso_contour(hc, spec, cfg);
    std::vector<evid::OutputRow> rows;
    for (const auto& p : contour.points) {
        evid::OutputRow row;
        row.class_tag = hc.tag();
        row.theta2_left = hc.theta2().lo;
        row.theta2_right = hc.theta2().hi;
        row.ratio = p.ratio;
        row.error = p.error;
        if (p.error.empty()) {
            auto res =
                evid::evidence_components(hc, evid::detail::obs_from_ratio(p.n, p.ratio), cfg);
            row = evid::make_row(res);
        }
        rows.push_back(std::move(row));
    }
    if (contour.apex_index >= 0) {
        const auto& apex = contour.points[contour.apex_index];
        std::fprintf(stderr, "apex: ratio=%.12g n=%.12g\n", apex.ratio, apex.n);
    }
    print_rows(o, rows);
    return 0;
}

int run_trp(const CommonOpts& o, const std::vector<double>& n_grid) {
    auto hc = make_hc(o);
    auto cfg = make_cfg(o);
    std::vector<evid::OutputRow> rows;
    for (double n : n_grid) {
        try {
            auto trp = evid::find_trp(hc, n, cfg);
            for (const auto& p : trp.points) {
                evid::OutputRow row;
                row.class_tag = hc.tag();
                row.theta2_left = hc.theta2().lo;
                row.theta2_right = hc.theta2().hi;
                row.n = n;
                row.x = p.ratio * n;
                row.ratio = p.ratio;
                row.e = p.e_min;
                row.log2_e = std::log(p.e_min) / std::log(2.0);
                row.favored = "boundary";
                row.trp1 = trp.points[0].ratio;
                if (trp.points.size() > 1) row.trp2 = trp.points[1].ratio;
                rows.push_back(std::move(row));
            }
        } catch (const std::exception& ex) {
            evid::OutputRow row;
            row.class_tag = hc.tag();
            row.n = n;
            row.error = ex.what();
            rows.push_back(std::move(row));
        }
    }
    print_rows(o, rows);
    return 0;
}

int run_verify(const std::string& format, double tol) {
    evid::QuadratureConfig cfg;
    cfg.rel_tol = tol;
    std::vector<evid::HypothesisContrast> hcs = {
        evid::HypothesisContrast::class_1a(), evid::HypothesisContrast::class_1b(),
        evid::HypothesisContrast::class_2a(), evid::HypothesisContrast::class_2b(0.4, 0.6)};
    std::vector<evid::VerificationReport> reports;
    reports.push_back(evid::check_kld_identity(evid::default_identity_grid()));
    reports.push_back(evid::check_volume_oracle(cfg));
    reports.push_back(
        evid::mlr_negative_control(evid::HypothesisContrast::class_1a(), 0.0, {10, 20, 30, 40}, cfg));
    reports.push_back(
        evid::mlr_negative_control(evid::HypothesisContrast::class_1a(), 0.1, {20, 40, 60, 80}, cfg));
    auto bbp = evid::run_bbp_suite(hcs, cfg);
    reports.insert(reports.end(), bbp.begin(), bbp.end());
    if (format == "json")
        evid::emit_report_json(std::cout, reports);
    else
        evid::emit_report_csv(std::cout, reports);
    for (const auto& r : reports)
        if (!r.pass) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"calibrated evidence for binomial hypothesis contrasts"};
    app.require_subcommand(1);

    CommonOpts ev_o, sw_o, iso_o, trp_o;
    double ev_n = 0;
    std::optional<double> ev_x, ev_ratio;
    auto* ev_cmd = app.add_subcommand("evidence", "evidence for one observation");
    add_common(ev_cmd, ev_o);
    ev_cmd->add_option("--n", ev_n, "sample size")->required()->check(CLI::PositiveNumber);
    auto* ev_x_opt = ev_cmd->add_option("--x", ev_x, "head count");
    ev_cmd->add_option("--ratio", ev_ratio, "head ratio x/n")->excludes(ev_x_opt);

    std::optional<double> sw_n, sw_ratio;
    std::string sw_nrange, sw_rrange;
    auto* sw_cmd = app.add_subcommand("sweep", "evidence over a grid");
    add_common(sw_cmd, sw_o);
    auto* sw_n_opt = sw_cmd->add_option("--n", sw_n, "single sample size");
    sw_cmd->add_option("--nrange", sw_nrange, "n grid lo:hi:steps")->excludes(sw_n_opt);
    auto* sw_r_opt = sw_cmd->add_option("--ratio", sw_ratio, "single ratio");
    sw_cmd->add_option("--ratiorange", sw_rrange, "ratio grid lo:hi:steps")->excludes(sw_r_opt);

    double iso_e = 0;
    std::optional<double> iso_ratio;
    std::string iso_rrange;
    auto* iso_cmd = app.add_subcommand("iso", "solve n along an iso-E contour");
    add_common(iso_cmd, iso_o);
    iso_cmd->add_option("--iso", iso_e, "target evidence E")->required()->check(CLI::PositiveNumber);
    auto* iso_r_opt = iso_cmd->add_option("--ratio", iso_ratio, "single ratio");
    iso_cmd->add_option("--ratiorange", iso_rrange, "ratio grid lo:hi:steps")->excludes(iso_r_opt);

    std::optional<double> trp_n;
    std::string trp_nrange;
    auto* trp_cmd = app.add_subcommand("trp", "transition points at fixed n");
    add_common(trp_cmd, trp_o);
    auto* trp_n_opt = trp_cmd->add_option("--n", trp_n, "single sample size");
    trp_cmd->add_option("--nrange", trp_nrange, "n grid lo:hi:steps")->excludes(trp_n_opt);

    bool verify_all = false;
    std::string verify_format = "csv";
    double verify_tol = 1e-10;
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    verify_cmd->add_flag("--all", verify_all, "run every suite (default behavior)");
    verify_cmd->add_option("--format", verify_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    verify_cmd->add_option("--tol", verify_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ev_cmd->parsed()) return run_evidence(ev_o, ev_n, ev_x, ev_ratio);
        if (sw_cmd->parsed()) {
            if (!sw_n && sw_nrange.empty())
                throw UsageError("sweep: give --n or --nrange");
            if (!sw_ratio && sw_rrange.empty())
                throw UsageError("sweep: give --ratio or --ratiorange");
            auto n_grid = sw_n ? std::vector<double>{*sw_n} : parse_range(sw_nrange, "--nrange");
            auto r_grid =
                sw_ratio ? std::vector<double>{*sw_ratio} : parse_range(sw_rrange, "--ratiorange");
            return run_sweep(sw_o, n_grid, r_grid);
        }
        if (iso_cmd->parsed()) {
            if (!iso_ratio && iso_rrange.empty())
                throw UsageError("iso: give --ratio or --ratiorange");
            auto r_grid =
                iso_ratio ? std::vector<double>{*iso_ratio} : parse_range(iso_rrange, "--ratiorange");
            return run_iso(iso_o, iso_e, r_grid);
        }
        if (trp_cmd->parsed()) {
            if (!trp_n && trp_nrange.empty())
                throw UsageError("trp: give --n or --nrange");
            auto n_grid = trp_n ? std::vector<double>{*trp_n} : parse_range(trp_nrange, "--nrange");
            return run_trp(trp_o, n_grid);
        }
        if (verify_cmd->parsed()) return run_verify(verify_format, verify_tol);
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
