#include "polyslice/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyslice/bounds.hpp"
#include "polyslice/errors.hpp"
#include "polyslice/harness.hpp"
#include "polyslice/monte_carlo.hpp"
#include "polyslice/psi.hpp"
#include "polyslice/quadrature.hpp"

namespace polyslice::cli {

namespace {

std::string fmt12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

std::vector<double> parse_reals(const std::string& csv, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw DomainError(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& csv, const char* what)
{
    std::vector<int> out;
    for (double v : parse_reals(csv, what)) {
        if (v != std::floor(v)) throw DomainError(std::string(what) + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// "lo:hi:count" or a plain comma list.
std::vector<double> parse_grid(const std::string& spec)
{
    if (spec.find(':') == std::string::npos) return parse_reals(spec, "--grid");
    double lo, hi;
    int count;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 2)
        throw DomainError("--grid: expected lo:hi:count with count >= 2");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
    return out;
}

Direction direction_from_flags(const std::string& direction_csv, int n_uniform)
{
    if (!direction_csv.empty()) {
        const auto raw = parse_reals(direction_csv, "--direction");
        Direction d = canonicalize(raw);
        bool changed = raw.size() != d.weights().size();
        for (size_t i = 0; !changed && i < raw.size(); ++i)
            changed = std::abs(raw[i] - d.weights()[i]) > 1e-12;
        if (changed)
            std::cerr << "note: direction canonicalized (absolute values, sorted, unit norm)\n";
        return d;
    }
    if (n_uniform >= 1) return canonicalize(std::vector<double>(n_uniform, 1.0));
    throw DomainError("need --direction or --n");
}

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw DomainError("cannot open --out path: " + out_path);
    os << text;
}

int cmd_volume(const Direction& a, const std::string& method, long samples, uint64_t seed,
               double tol, const std::string& format, const std::string& out)
{
    QuadratureConfig cfg;
    cfg.abs_tol = tol > 0 ? tol : 1e-8;
    VolumeEstimate est;
    if (method == "auto")
        est = volume_auto(a, cfg);
    else if (method == "quad")
        est = volume_quadrature(a, cfg);
    else if (method == "mc")
        est = volume_monte_carlo(a, samples > 0 ? samples : 100000, seed);
    else if (method == "closed") {
        if (a.n() > 3) throw DomainError("--method closed: only n <= 3 has a closed form");
        est = volume_auto(a, cfg);
    } else
        throw DomainError("--method must be quad|mc|closed|auto");

    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j = {{"direction", a.weights()},
                            {"value", est.value},
                            {"method", to_string(est.method)},
                            {"error", est.error},
                            {"samples_or_panels", est.samples_or_panels}};
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "value,method,error,samples_or_panels\n"
           << fmt12(est.value) << ',' << to_string(est.method) << ',' << fmt12(est.error) << ','
           << est.samples_or_panels << '\n';
    } else {
        os << fmt12(est.value) << '\n'
           << "method: " << to_string(est.method) << "  error: " << fmt12(est.error)
           << "  samples_or_panels: " << est.samples_or_panels << '\n';
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_psi(double s, double tol, const std::string& format, const std::string& out)
{
    QuadratureConfig cfg = default_psi_config();
    if (tol > 0) cfg.abs_tol = tol;
    const PsiValue pv = psi(s, cfg);
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j = {{"s", pv.s}, {"value", pv.value}, {"error", pv.error}};
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "s,value,error\n" << fmt12(pv.s) << ',' << fmt12(pv.value) << ',' << fmt12(pv.error) << '\n';
    } else {
        os << fmt12(pv.value) << " +- " << fmt12(pv.error) << '\n';
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_classify(const Direction& a, const std::string& format, const std::string& out)
{
    const auto reg = bounds::classify_region(a);
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json jr = nlohmann::json::object();
        for (const auto& [tag, b] : reg.bounds) jr[bounds::to_string(tag)] = b;
        nlohmann::json j = {{"direction", a.weights()}, {"delta", reg.delta}, {"regions", jr}};
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "region,bound\n";
        for (const auto& [tag, b] : reg.bounds)
            os << bounds::to_string(tag) << ',' << fmt12(b) << '\n';
    } else {
        os << "delta: " << fmt12(reg.delta) << '\n';
        if (reg.empty()) os << "no applicable region (n = 2 gap band is expected)\n";
        for (const auto& [tag, b] : reg.bounds)
            os << bounds::to_string(tag) << ": A_n <= " << fmt12(b) << '\n';
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_bounds(const Direction& a, double tol, const std::string& format, const std::string& out)
{
    QuadratureConfig cfg = default_psi_config();
    if (tol > 0) cfg.abs_tol = tol;
    const auto sb = bounds::stability_bounds(a, cfg);
    const double be = a.n() >= 2 && a.a1() < 1.0
                          ? bounds::berry_esseen_upper(a)
                          : std::numeric_limits<double>::quiet_NaN();
    std::ostringstream os;
    if (format == "json") {
        nlohmann::json j = {{"direction", a.weights()},
                            {"delta", bounds::delta(a)},
                            {"theorem1_upper", sb.upper_thm1},
                            {"lower_stability", sb.lower_stab},
                            {"lipschitz_constant", sb.lipschitz_constant}};
        if (std::isfinite(sb.fourier_product)) j["fourier_product"] = sb.fourier_product;
        else j["fourier_product"] = "inf";
        if (!std::isnan(be)) j["berry_esseen_upper"] = be;
        os << j.dump(2) << '\n';
    } else {
        os << "theorem1_upper:     " << fmt12(sb.upper_thm1) << '\n'
           << "lower_stability:    " << fmt12(sb.lower_stab) << '\n'
           << "fourier_product:    "
           << (std::isfinite(sb.fourier_product) ? fmt12(sb.fourier_product) : "inf") << '\n'
           << "lipschitz_constant: " << fmt12(sb.lipschitz_constant) << '\n';
        if (!std::isnan(be)) os << "berry_esseen_upper: " << fmt12(be) << '\n';
    }
    write_output(os.str(), out);
    return 0;
}

int cmd_sweep(const harness::SweepConfig& cfg, const std::string& format, const std::string& out)
{
    const auto report = harness::sweep(cfg);
    std::ostringstream os;
    if (format == "csv") {
        report.write_csv(os);
    } else if (format == "json") {
        os << report.to_json().dump(2) << '\n';
    } else {
        os << "records: " << report.summary.records << "  checks: " << report.summary.checks_run
           << "  failed: " << report.summary.checks_failed << '\n';
        for (const auto& [name, margin] : report.summary.worst_margin)
            os << "  " << name << " worst margin: " << fmt12(margin) << '\n';
    }
    write_output(os.str(), out);
    if (!report.all_passed()) {
        std::cerr << report.summary.checks_failed << " check(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args)
{
    CLI::App app{"polyslice: polydisc hyperplane-section volumes, bounds, and verification sweeps"};
    app.require_subcommand(1);

    std::string direction_csv, method = "auto", format = "text", out_path, sampler = "uniform_sphere";
    std::string n_list_csv, grid_spec;
    int n_uniform = 0, count = 100;
    long samples = 0;
    uint64_t seed = 1;
    double tol = 0.0, s_value = 0.0;
    bool inject_failure = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: text|json|csv");
        sub->add_option("--out", out_path, "write output to this path instead of stdout");
        sub->add_option("--tol", tol, "absolute tolerance for quadrature engines");
    };

    auto* vol = app.add_subcommand("volume", "normalized section volume A_n(a)");
    vol->add_option("--direction", direction_csv, "comma-separated weights (canonicalized on entry)");
    vol->add_option("--n", n_uniform, "use the uniform direction (1/sqrt(n), ...)");
    vol->add_option("--method", method, "quad|mc|closed|auto");
    vol->add_option("--samples", samples, "Monte Carlo sample count");
    vol->add_option("--seed", seed, "Monte Carlo seed");
    add_common(vol);

    auto* psi_cmd = app.add_subcommand("psi", "Psi(s) by zero-panel quadrature");
    psi_cmd->add_option("--s", s_value, "exponent s > 4/3")->required();
    add_common(psi_cmd);

    auto* cls = app.add_subcommand("classify", "region tags and per-region bounds");
    cls->add_option("--direction", direction_csv)->required();
    add_common(cls);

    auto* bnd = app.add_subcommand("bounds", "all stability bounds for a direction");
    bnd->add_option("--direction", direction_csv)->required();
    add_common(bnd);

    auto* swp = app.add_subcommand("sweep", "verification sweep over random directions");
    swp->add_option("--n", n_list_csv, "comma-separated dimensions, e.g. 2,3,4")->required();
    swp->add_option("--count", count, "directions per dimension");
    swp->add_option("--sampler", sampler, "uniform_sphere|dirichlet_squares|grid_2d|special_vectors");
    swp->add_option("--seed", seed, "sweep seed");
    swp->add_option("--samples", samples, "Monte Carlo samples per direction (0 = off)");
    swp->add_flag("--inject-failure", inject_failure, "test hook: force one failing check");
    add_common(swp);

    auto* scan_asym = app.add_subcommand("scan-asymptotic", "n * (2 - A_n) along uniform directions");
    scan_asym->add_option("--n", n_list_csv, "comma-separated dimensions")->required();
    add_common(scan_asym);

    auto* scan_psi = app.add_subcommand("scan-psi", "Psi(s) against the quantitative branch bounds");
    scan_psi->add_option("--grid", grid_spec, "lo:hi:count or comma list")->required();
    add_common(scan_psi);

    auto* scan_near = app.add_subcommand("scan-near-extremiser", "deficit along a(eps)");
    scan_near->add_option("--grid", grid_spec, "comma list of eps in (0, 1/2)")->required();
    add_common(scan_near);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (vol->parsed())
            return cmd_volume(direction_from_flags(direction_csv, n_uniform), method, samples, seed,
                              tol, format, out_path);
        if (psi_cmd->parsed()) return cmd_psi(s_value, tol, format, out_path);
        if (cls->parsed())
            return cmd_classify(direction_from_flags(direction_csv, 0), format, out_path);
        if (bnd->parsed()) return cmd_bounds(direction_from_flags(direction_csv, 0), tol, format, out_path);
        if (swp->parsed()) {
            harness::SweepConfig cfg;
            cfg.n_values = parse_ints(n_list_csv, "--n");
            cfg.directions_per_n = count;
            cfg.sampler = harness::sampler_from_string(sampler);
            cfg.seed = seed;
            if (tol > 0) cfg.engine_tolerances.abs_tol = tol;
            cfg.mc_samples = samples;
            cfg.inject_failure = inject_failure;
            return cmd_sweep(cfg, format, out_path);
        }
        if (scan_asym->parsed()) {
            QuadratureConfig cfg;
            if (tol > 0) cfg.abs_tol = tol;
            const auto scan = harness::asymptotic_extremiser_scan(parse_ints(n_list_csv, "--n"), cfg);
            std::ostringstream os;
            os << "n,value,deficit,n_deficit\n";
            for (const auto& r : scan.rows)
                os << r.n << ',' << fmt12(r.value) << ',' << fmt12(r.deficit) << ','
                   << fmt12(r.n_deficit) << '\n';
            write_output(os.str(), out_path);
            if (!scan.deficits_positive || !scan.stabilized) {
                std::cerr << "asymptotic scan failed stabilization check\n";
                return 1;
            }
            return 0;
        }
        if (scan_psi->parsed()) {
            QuadratureConfig cfg = default_psi_config();
            if (tol > 0) cfg.abs_tol = tol;
            const auto rows = harness::psi_scan(parse_grid(grid_spec), cfg);
            std::ostringstream os;
            os << "s,value,error,branch_bound,pass\n";
            bool all = true;
            for (const auto& r : rows) {
                os << fmt12(r.s) << ',' << fmt12(r.value) << ',' << fmt12(r.error) << ','
                   << fmt12(r.branch_bound) << ',' << (r.pass ? 1 : 0) << '\n';
                all = all && r.pass;
            }
            write_output(os.str(), out_path);
            return all ? 0 : 1;
        }
        if (scan_near->parsed()) {
            const auto rows = harness::near_extremiser_scan(parse_grid(grid_spec));
            std::ostringstream os;
            os << "eps,value,deficit,delta,deficit_over_eps,pass\n";
            bool all = true;
            for (const auto& r : rows) {
                os << fmt12(r.eps) << ',' << fmt12(r.value) << ',' << fmt12(r.deficit) << ','
                   << fmt12(r.delta) << ',' << fmt12(r.ratio) << ',' << (r.pass ? 1 : 0) << '\n';
                all = all && r.pass;
            }
            write_output(os.str(), out_path);
            return all ? 0 : 1;
        }
    } catch (const TolNotReachedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::cerr << "usage error: no subcommand\n";
    return 2;
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace polyslice::cli
