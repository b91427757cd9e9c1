/** \file afinv.cpp
    Command-line front end.

      afinv oned <file>     critical points, inverse-series coefficients by
                            three methods, action series, isochronicity
      afinv trees           exact layer coefficient tables (table/dot/json)
      afinv invert <file>   truncated series inverse of F_t, Newton oracle,
                            residual-order fit over a t grid
      afinv verify          self-verification suites

    Exit codes: 0 ok, 1 verification failure, 2 input error.
    Reports on stdout are byte-identical across runs at fixed inputs,
    precision, and version; wall time goes to stderr.
*/
#include "afinv/dynamics.h"
#include "afinv/inverse.h"
#include "afinv/io.h"
#include "afinv/verify.h"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using num::Real;
using num::Vec;
using nlohmann::ordered_json;

constexpr const char* kVersion = "afinv 0.1.0";

enum class Format { table, tsv, json, dot };

Format parse_format(const std::string& name) {
    if (name == "table") return Format::table;
    if (name == "tsv") return Format::tsv;
    if (name == "json") return Format::json;
    if (name == "dot") return Format::dot;
    throw CLI::ValidationError("--format", "expected table|tsv|json|dot");
}

std::string fmt(const Real& x, unsigned digits) {
    return x.str(digits);
}

struct Output {
    std::string path;  // empty = stdout
    std::ostringstream buffer;
    ~Output() = default;
    void flush() {
        if (path.empty()) {
            std::cout << buffer.str();
        } else {
            std::ofstream out(path);
            if (!out)
                throw std::runtime_error("cannot write to " + path);
            out << buffer.str();
        }
    }
};

// ------------------------------------------------------------------ oned

int cmd_oned(const std::string& file, int order, const std::string& critical,
             Format format, Output& out) {
    nlohmann::json j = io::load_json_file(file);
    oned::System sys = io::parse_oned_system(j);
    auto cps = oned::critical_points(sys);
    const unsigned d = num::working_digits();
    const unsigned show = std::min(d, 30u);

    std::vector<int> which;
    if (critical == "all") {
        for (const auto& cp : cps)
            which.push_back(cp.index);
    } else {
        int k = std::stoi(critical);
        if (k < 0 || k >= static_cast<int>(cps.size()))
            throw io::SchemaError("--critical: index " + critical + " out of range 0.." +
                                  std::to_string(cps.size() - 1));
        which.push_back(k);
    }
    int p_max = (order + 1) / 2;
    Real iso_tol = num::pow10(20 - static_cast<long>(d));

    if (format == Format::json) {
        ordered_json root;
        root["command"] = "oned";
        root["input"] = file;
        root["digits"] = d;
        root["order"] = order;
        root["critical_points"] = ordered_json::array();
        for (const auto& cp : cps)
            root["critical_points"].push_back(
                {{"k", cp.index}, {"b", fmt(cp.location, show)}, {"slope", fmt(cp.slope, show)}});
        root["results"] = ordered_json::array();
        for (int k : which) {
            auto rev = oned::lagrange_coefficients(sys, cps, k, order,
                                                   oned::LagrangeMethod::reversion);
            auto der = oned::lagrange_coefficients(sys, cps, k, order,
                                                   oned::LagrangeMethod::derivative_formula);
            auto trk = oned::lagrange_coefficients(sys, cps, k, order,
                                                   oned::LagrangeMethod::root_tracking);
            auto rep = oned::isochronicity_report(sys, cps, k, p_max, iso_tol);
            ordered_json res;
            res["k"] = k;
            res["g"] = ordered_json::array();
            for (int i = 0; i < order; ++i) {
                Real dev = std::max(abs(rev.g[i] - der.g[i]), abs(rev.g[i] - trk.g[i]));
                res["g"].push_back({{"i", i + 1},
                                    {"value", fmt(rev.g[i], show)},
                                    {"max_method_dev", fmt(dev, 3)}});
            }
            res["action"] = ordered_json::array();
            for (int p = 1; p <= p_max; ++p)
                res["action"].push_back({{"p", p}, {"A", fmt(rep.coeff[p - 1], show)}});
            res["isochronous"] = rep.isochronous;
            res["max_nonlinear_action"] = fmt(rep.worst, 3);
            root["results"].push_back(res);
        }
        out.buffer << root.dump(2) << "\n";
        return 0;
    }

    const char* sep = format == Format::tsv ? "\t" : "  ";
    out.buffer << "# oned " << file << "  digits=" << d << " order=" << order << "\n";
    out.buffer << "# critical points\n";
    out.buffer << "k" << sep << "b_k" << sep << "f'(b_k)\n";
    for (const auto& cp : cps)
        out.buffer << cp.index << sep << fmt(cp.location, show) << sep << fmt(cp.slope, show)
                   << "\n";
    for (int k : which) {
        auto rev =
            oned::lagrange_coefficients(sys, cps, k, order, oned::LagrangeMethod::reversion);
        auto der = oned::lagrange_coefficients(sys, cps, k, order,
                                               oned::LagrangeMethod::derivative_formula);
        auto trk =
            oned::lagrange_coefficients(sys, cps, k, order, oned::LagrangeMethod::root_tracking);
        auto rep = oned::isochronicity_report(sys, cps, k, p_max, iso_tol);
        out.buffer << "# inverse series at k=" << k << "\n";
        out.buffer << "i" << sep << "g_i" << sep << "max_method_dev\n";
        for (int i = 0; i < order; ++i) {
            Real dev = std::max(abs(rev.g[i] - der.g[i]), abs(rev.g[i] - trk.g[i]));
            out.buffer << i + 1 << sep << fmt(rev.g[i], show) << sep << fmt(dev, 3) << "\n";
        }
        out.buffer << "# action series at k=" << k << "\n";
        out.buffer << "p" << sep << "A_p\n";
        for (int p = 1; p <= p_max; ++p)
            out.buffer << p << sep << fmt(rep.coeff[p - 1], show) << "\n";
        out.buffer << "verdict: "
                   << (rep.isochronous
                           ? "isochronous to order " + std::to_string(p_max)
                           : "non-isochronous (max |A_p| = " + fmt(rep.worst, 10) + ")")
                   << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ trees

int cmd_trees(int max_order, Format format, Output& out) {
    if (format == Format::dot) {
        for (int m = 1; m <= max_order; ++m)
            out.buffer << trees::to_dot(trees::q_layer(m));
        return 0;
    }
    if (format == Format::json) {
        ordered_json rows = ordered_json::array();
        for (int m = 1; m <= max_order; ++m) {
            for (const auto& [code, term] : trees::q_layer(m).terms) {
                ordered_json row;
                row["m"] = m;
                row["coeff"] = term.coeff.str();
                row["edges"] = ordered_json::array();
                for (const auto& [a, b] : term.shape.edges)
                    row["edges"].push_back({a, b});
                rows.push_back(row);
            }
        }
        out.buffer << rows.dump(2) << "\n";
        return 0;
    }
    const char* sep = format == Format::tsv ? "\t" : "  ";
    out.buffer << "m" << sep << "coeff" << sep << "degrees" << sep << "code\n";
    for (int m = 1; m <= max_order; ++m) {
        const trees::QLayer& layer = trees::q_layer(m);
        for (const auto& [code, term] : layer.terms) {
            out.buffer << m << sep << term.coeff << sep;
            auto profile = trees::degree_profile(term.shape);
            for (std::size_t i = 0; i < profile.size(); ++i)
                out.buffer << (i ? "," : "") << profile[i];
            out.buffer << sep << code << "\n";
        }
        out.buffer << "# layer " << m << ": " << layer.terms.size() << " shapes, signed sum "
                   << trees::coefficient_sum(layer) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- invert

Vec parse_point(const std::string& text, int dim) {
    std::vector<Real> coords;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        coords.push_back(num::real_from_string(part));
    if (static_cast<int>(coords.size()) != dim)
        throw io::SchemaError("--point: expected " + std::to_string(dim) + " coordinates, got " +
                              std::to_string(coords.size()));
    return coords;
}

int cmd_invert(const std::string& file, const std::string& point, const std::string& t_spec,
               int order, bool oracle, Format format, Output& out) {
    nlohmann::json j = io::load_json_file(file);
    hyper::Arrangement arr = io::parse_arrangement(j);
    Vec z = parse_point(point, arr.dim());
    const unsigned show = std::min(num::working_digits(), 30u);

    if (t_spec.rfind("grid:", 0) == 0) {
        std::stringstream ss(t_spec.substr(5));
        std::string a, b, k;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, k))
            throw io::SchemaError("--t: grid spec must be grid:a,b,k");
        Real lo = num::real_from_string(a), hi = num::real_from_string(b);
        int count = std::stoi(k);
        if (count < 2 || !(lo > 0) || !(hi > lo))
            throw io::SchemaError("--t: grid needs 0 < a < b and k >= 2");
        std::vector<Real> grid;
        Real ratio = pow(hi / lo, Real(1) / (count - 1));
        Real t = lo;
        for (int i = 0; i < count; ++i) {
            grid.push_back(t);
            t *= ratio;
        }
        invmap::SlopeFit fit = invmap::residual_order(arr, z, order, grid);
        if (format == Format::json) {
            ordered_json root;
            root["command"] = "invert";
            root["order"] = order;
            root["slope"] = fmt(fit.slope, show);
            root["expected_slope"] = order + 2;
            root["points"] = ordered_json::array();
            for (std::size_t i = 0; i < grid.size(); ++i)
                root["points"].push_back({{"t", fmt(grid[i], show)},
                                          {"log_residual", fmt(fit.points[i].second, show)}});
            out.buffer << root.dump(2) << "\n";
        } else {
            const char* sep = format == Format::tsv ? "\t" : "  ";
            out.buffer << "# invert " << file << "  order=" << order << " fit over " << count
                       << " t values\n";
            out.buffer << "t" << sep << "residual\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                out.buffer << fmt(grid[i], 10) << sep << fmt(exp(fit.points[i].second), 10)
                           << "\n";
            out.buffer << "fitted slope: " << fmt(fit.slope, 10) << " (expected " << order + 2
                       << ")\n";
        }
        return 0;
    }

    Real t = num::real_from_string(t_spec);
    invmap::InverseSeriesResult res = invmap::g_t_eval(arr, z, t, order);
    Vec newton;
    Real disagreement = 0;
    if (oracle) {
        newton = invmap::newton_inverse(arr, z, t, z);
        Vec diff = res.output;
        for (int i = 0; i < arr.dim(); ++i)
            diff[i] -= newton[i];
        disagreement = num::norm(diff);
    }
    if (format == Format::json) {
        ordered_json root;
        root["command"] = "invert";
        root["t"] = fmt(t, show);
        root["order"] = order;
        root["output"] = ordered_json::array();
        for (const Real& v : res.output)
            root["output"].push_back(fmt(v, show));
        root["residual"] = fmt(res.residual, 10);
        if (oracle) {
            root["oracle"] = ordered_json::array();
            for (const Real& v : newton)
                root["oracle"].push_back(fmt(v, show));
            root["disagreement"] = fmt(disagreement, 10);
        }
        out.buffer << root.dump(2) << "\n";
    } else {
        const char* sep = format == Format::tsv ? "\t" : "  ";
        out.buffer << "# invert " << file << "  t=" << fmt(t, 10) << " order=" << order << "\n";
        out.buffer << "G_t(z):";
        for (const Real& v : res.output)
            out.buffer << sep << fmt(v, show);
        out.buffer << "\nresidual |F_t(G_t(z)) - z|: " << fmt(res.residual, 10) << "\n";
        if (oracle) {
            out.buffer << "newton oracle:";
            for (const Real& v : newton)
                out.buffer << sep << fmt(v, show);
            out.buffer << "\ndisagreement: " << fmt(disagreement, 10) << "\n";
        }
    }
    return 0;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, std::uint64_t seed, Format format, Output& out) {
    std::vector<verify::Check> checks = verify::run_suite(suite, seed);
    if (format == Format::json) {
        ordered_json root = ordered_json::array();
        for (const verify::Check& c : checks)
            root.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        out.buffer << root.dump(2) << "\n";
    } else {
        const char* sep = format == Format::tsv ? "\t" : "  ";
        for (const verify::Check& c : checks)
            out.buffer << (c.pass ? "PASS" : "FAIL") << sep << c.name << sep << c.detail << "\n";
        out.buffer << (verify::all_passed(checks) ? "all checks passed" : "FAILURES present")
                   << "\n";
    }
    return verify::all_passed(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"series inversion toolkit for Aomoto-Forrester-type maps"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    unsigned digits = 50;
    std::string format_name = "table";
    std::string out_path;
    std::uint64_t seed = 20240901;
    app.add_option("--digits", digits, "working precision in decimal digits")
        ->capture_default_str();
    app.add_option("--format", format_name, "table|tsv|json|dot")->capture_default_str();
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_option("--seed", seed, "seed for randomized test points")->capture_default_str();

    std::string file, critical = "all", point, t_spec = "0.1", suite = "all";
    int order = 10, max_order = 5, invert_order = 5;
    bool oracle = false;

    // let the global options (--digits, --format, ...) appear after the
    // subcommand name as well
    CLI::App* oned_cmd = app.add_subcommand("oned", "1-D inverse series and action report");
    oned_cmd->fallthrough();
    oned_cmd->add_option("file", file, "system file {\"poles\": [...], \"weights\": [...]}")
        ->required();
    oned_cmd->add_option("--order", order, "series order M")->capture_default_str();
    oned_cmd->add_option("--critical", critical, "critical point index or 'all'")
        ->capture_default_str();

    CLI::App* trees_cmd = app.add_subcommand("trees", "exact layer coefficient tables");
    trees_cmd->fallthrough();
    trees_cmd->add_option("--max-order", max_order, "highest layer m")->capture_default_str();

    CLI::App* invert_cmd = app.add_subcommand("invert", "truncated inverse of F_t");
    invert_cmd->fallthrough();
    invert_cmd->add_option("file", file, "arrangement file")->required();
    invert_cmd->add_option("--point", point, "evaluation point z, comma separated")->required();
    invert_cmd->add_option("--t", t_spec, "deformation t, or grid:a,b,k for a slope fit")
        ->capture_default_str();
    invert_cmd->add_option("--order", invert_order, "truncation layer M")->capture_default_str();
    invert_cmd->add_flag("--oracle", oracle, "also run the Newton oracle and report the gap");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the self-verification suites");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--suite", suite, "all|oned|trees|invert|dynamics")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        num::set_working_digits(digits);
        Format format = parse_format(format_name);
        Output out;
        out.path = out_path;
        if (oned_cmd->parsed())
            rc = cmd_oned(file, order, critical, format, out);
        else if (trees_cmd->parsed())
            rc = cmd_trees(max_order, format, out);
        else if (invert_cmd->parsed())
            rc = cmd_invert(file, point, t_spec, invert_order, oracle, format, out);
        else if (verify_cmd->parsed())
            rc = cmd_verify(suite, seed, format, out);
        out.flush();
    } catch (const io::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cerr << "[afinv] wall time: " << static_cast<long>(elapsed * 1000) << " ms\n";
    return rc;
}
