#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyquant/polyquant.hpp"
#include "serialize.hpp"
#include "svg.hpp"

namespace polyquant::cli {

enum ExitCode : int { ok = 0, validation_failed = 1, usage_error = 2 };

struct CliConfig {
    int m = 0;
    std::optional<int> k;
    std::optional<int> n;
    std::string format;  // empty: subcommand default
    std::string out;
    double tol = 1e-9;
    int nodes = default_quadrature_nodes;
    std::uint64_t seed = 0;
    int svg_size = 800;
    std::string svg;
    bool limit = false;
    std::string sides_range;
    std::string k_range;
    std::string init = "random";
    int max_iter = 10000;
};

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::pair<int, int> parse_range(const std::string& text, const char* what) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            std::size_t used = 0;
            const int v = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {v, v};
        }
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        const int lo = std::stoi(a, &used_a);
        const int hi = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
        if (lo > hi) throw UsageError(std::string(what) + " range is empty: " + text);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError(std::string("malformed ") + what + " range '" + text + "', expected A:B");
    }
}

inline int require_m(const CliConfig& c) {
    if (c.m == 0) throw UsageError("--sides is required");
    require_sides(c.m);
    return c.m;
}

inline int require_k(const CliConfig& c) {
    if (!c.k) throw UsageError("--k is required");
    if (*c.k < 1) throw UsageError("--k must be at least 1");
    return *c.k;
}

inline std::string resolve_format(const CliConfig& c, const char* fallback) {
    const std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv" && f != "text") throw UsageError("unsupported --format " + f);
    return f;
}

inline void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + c.out);
    f << text;
}

inline std::string points_csv(const QuantizerSet& q) {
    std::string s = "index,kind,x,y\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        const char* kind = "point";
        if (q.meta.method == Method::closed_form && q.meta.m > 0) {
            kind = i < static_cast<std::size_t>(q.meta.m) ? "corner" : "side";
        }
        s += std::to_string(i) + ',' + kind + ',' + io::number(q.points[i].x) + ',' + io::number(q.points[i].y) + '\n';
    }
    return s;
}

inline int cmd_quantize(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    const int k = require_k(c);
    const QuantizerSet q = optimal_mk_set(m, k);
    const std::string f = resolve_format(c, "json");
    if (f == "csv") {
        emit(c, points_csv(q), out);
    } else {
        emit(c, io::quantize_document(q, optimal_error_value(m, k)).dump() + '\n', out);
    }
    return ok;
}

inline int cmd_error(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    const int k = require_k(c);
    const DistortionReport rep = optimal_error(m, k);
    if (resolve_format(c, "json") == "csv") {
        std::string s = "m,k,n,r,total,corner_part,side_part\n";
        s += std::to_string(m) + ',' + std::to_string(k) + ',' + std::to_string(m * k) + ',' +
             io::number(*rep.params.r) + ',' + io::number(rep.total) + ',' + io::number(*rep.corner_part) + ',' +
             io::number(*rep.side_part) + '\n';
        emit(c, s, out);
    } else {
        emit(c, io::to_json(rep).dump() + '\n', out);
    }
    return ok;
}

inline int cmd_coefficient(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    const double coef = quant_coefficient(m);
    const std::string f = resolve_format(c, "text");
    if (f == "json") {
        io::ordered_json j;
        j["m"] = m;
        j["coefficient"] = coef;
        if (c.limit) {
            j["circle_limit"] = circle_coefficient;
            j["gap"] = circle_coefficient - coef;
        }
        emit(c, j.dump() + '\n', out);
    } else if (f == "csv") {
        std::string s = c.limit ? "m,coefficient,circle_limit,gap\n" : "m,coefficient\n";
        s += std::to_string(m) + ',' + io::number(coef);
        if (c.limit) s += ',' + io::number(circle_coefficient) + ',' + io::number(circle_coefficient - coef);
        emit(c, s + '\n', out);
    } else if (c.limit) {
        emit(c,
             "coefficient " + io::number(coef) + "\ncircle_limit " + io::number(circle_coefficient) + "\ngap " +
                 io::number(circle_coefficient - coef) + '\n',
             out);
    } else {
        emit(c, io::number(coef) + '\n', out);
    }
    return ok;
}

inline int cmd_sweep(const CliConfig& c, std::ostream& out) {
    std::pair<int, int> ms;
    if (!c.sides_range.empty()) {
        ms = parse_range(c.sides_range, "sides");
    } else {
        ms = {require_m(c), c.m};
    }
    std::pair<int, int> ks;
    if (!c.k_range.empty()) {
        ks = parse_range(c.k_range, "k");
    } else {
        const int k = require_k(c);
        ks = {k, k};
    }
    if (ks.first < 1) throw UsageError("k range must start at 1 or above");
    std::vector<int> k_values;
    for (int k = ks.first; k <= ks.second; ++k) k_values.push_back(k);

    const std::string f = resolve_format(c, "csv");
    std::string s;
    io::ordered_json rows = io::ordered_json::array();
    if (f != "json") s = std::string(io::convergence_csv_header()) + '\n';
    for (int m = ms.first; m <= ms.second; ++m) {
        for (const auto& row : convergence_table(m, k_values)) {
            if (f == "json") {
                rows.push_back(io::to_json(row));
            } else {
                s += io::convergence_csv_line(row) + '\n';
            }
        }
    }
    emit(c, f == "json" ? rows.dump() + '\n' : s, out);
    return ok;
}

inline InitKind parse_init(const std::string& s) {
    if (s == "closed_form") return InitKind::closed_form;
    if (s == "perturbed") return InitKind::perturbed;
    if (s == "random") return InitKind::random;
    throw UsageError("unknown --init " + s + " (closed_form, perturbed, random)");
}

inline int resolve_n(const CliConfig& c, int m) {
    if (c.n) {
        if (*c.n < 1) throw UsageError("--n must be at least 1");
        return *c.n;
    }
    if (c.k) return m * require_k(c);
    throw UsageError("--n or --k is required");
}

inline int cmd_lloyd(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    const int n = resolve_n(c, m);
    const RegularPolygon p(m);
    const LloydInit init{parse_init(c.init), c.seed, 1e-3};
    const LloydState st = lloyd_solve(p, n, init, c.tol, c.max_iter, c.nodes);

    if (resolve_format(c, "json") == "csv") {
        emit(c, points_csv(st.points), out);
        return ok;
    }
    io::ordered_json j;
    j["m"] = m;
    j["n"] = n;
    j["init"] = c.init;
    j["seed"] = c.seed;
    j["iterations"] = st.iterations;
    j["converged"] = st.converged;
    j["max_move"] = st.max_move;
    j["distortion"] = st.distortion;
    if (n % m == 0) j["closed_form_V"] = optimal_error_value(m, n / m);
    j["frozen"] = st.frozen;
    j["points"] = io::points_json(st.points.points);
    emit(c, j.dump() + '\n', out);
    return ok;
}

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass() const { return std::isfinite(value) && value <= threshold; }
};

/// Oracle-versus-closed-form checks for one (m, k).
inline std::vector<Check> validation_checks(int m, int k, double tol, int nodes) {
    const RegularPolygon p(m);
    const QuantizerSet q = optimal_mk_set(m, k);
    const DistortionReport closed = optimal_error(m, k);
    const auto cells = voronoi_cells_on_boundary(p, q);
    const DistortionReport quad = distortion_quadrature(p, q, cells, nodes);

    std::vector<Check> checks;
    checks.push_back({"quadrature_vs_closed_form", std::abs(quad.total - closed.total) / closed.total, tol});
    checks.push_back({"lloyd_fixed_point", lloyd_step(p, q, cells).max_move, tol});
    checks.push_back({"decomposition", std::abs(*closed.corner_part + *closed.side_part - closed.total) / closed.total,
                      1e-12});

    // Corner cell of a_1 ends on side 1 at parameter r / l.
    const double r = *q.meta.r;
    double cut = std::nan("");
    for (const auto& arc : cells[0].arcs) {
        if (arc.side == 1 && arc.t_lo == 0.0) cut = arc.t_hi;
    }
    checks.push_back({"corner_cell_cut", std::abs(cut - r / p.side_length()), std::max(tol, 1e-10)});

    if (k >= 2) {
        checks.push_back({"radius_minimizer", std::abs(minimize_over_r(m, k, 1e-10) - r), std::max(tol, 1e-8)});
    }
    return checks;
}

inline int cmd_validate(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    const int k = require_k(c);
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    const auto checks = validation_checks(m, k, c.tol, c.nodes);

    bool all = true;
    io::ordered_json arr = io::ordered_json::array();
    for (const auto& ch : checks) {
        all = all && ch.pass();
        io::ordered_json j;
        j["name"] = ch.name;
        j["value"] = ch.value;
        j["threshold"] = ch.threshold;
        j["pass"] = ch.pass();
        arr.push_back(j);
    }
    if (resolve_format(c, "json") == "csv") {
        std::string s = "name,value,threshold,pass\n";
        for (const auto& ch : checks) {
            s += ch.name + ',' + io::number(ch.value) + ',' + io::number(ch.threshold) + ',' +
                 (ch.pass() ? "true" : "false") + '\n';
        }
        emit(c, s, out);
    } else {
        io::ordered_json j;
        j["m"] = m;
        j["k"] = k;
        j["n"] = m * k;
        j["tol"] = c.tol;
        j["checks"] = arr;
        j["pass"] = all;
        emit(c, j.dump() + '\n', out);
    }
    return all ? ok : validation_failed;
}

inline int cmd_render(const CliConfig& c, std::ostream& out) {
    const int m = require_m(c);
    if (c.svg_size < 16) throw UsageError("--svg-size must be at least 16");
    const RegularPolygon p(m);
    QuantizerSet q;
    if (c.k && !c.n) {
        q = optimal_mk_set(m, require_k(c));
    } else {
        const int n = resolve_n(c, m);
        q = lloyd_solve(p, n, LloydInit{parse_init(c.init), c.seed, 1e-3}, c.tol, c.max_iter, c.nodes).points;
    }
    const std::string svg = io::render_svg(p, q, voronoi_cells_on_boundary(p, q), c.svg_size);
    if (!c.svg.empty()) {
        std::ofstream f(c.svg, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + c.svg);
        f << svg;
    } else {
        emit(c, svg, out);
    }
    return ok;
}

}  // namespace detail

/// Parses argv (argv[0] is the program name) and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal quantizers for the uniform distribution on regular polygon boundaries", "polyquant"};
    app.require_subcommand(1);
    CliConfig c;

    const auto common = [&c](CLI::App* sub) {
        sub->add_option("--sides", c.m, "Number of polygon sides m (>= 3)");
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", c.out, "Write output to PATH instead of stdout");
        sub->add_option("--tol", c.tol, "Tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--nodes", c.nodes, "Gauss-Legendre nodes per arc")->check(CLI::Range(2, 64));
        sub->add_option("--seed", c.seed, "Seed for random initialization");
    };
    const auto with_k = [&c](CLI::App* sub) { sub->add_option("--k", c.k, "Points per vertex/side block, n = m k"); };
    const auto with_n = [&c](CLI::App* sub) {
        sub->add_option("--n", c.n, "Number of points");
        sub->add_option("--init", c.init, "closed_form, perturbed or random");
        sub->add_option("--max-iter", c.max_iter, "Lloyd iteration cap")->check(CLI::NonNegativeNumber);
    };

    auto* quantize = app.add_subcommand("quantize", "Emit the optimal set of n = m k means");
    common(quantize);
    with_k(quantize);
    auto* error = app.add_subcommand("error", "Emit the closed-form quantization error");
    common(error);
    with_k(error);
    auto* coefficient = app.add_subcommand("coefficient", "Emit the quantization coefficient");
    common(coefficient);
    coefficient->add_flag("--limit", c.limit, "Also print the circle limit pi^2/3 and the gap");
    auto* sweep = app.add_subcommand("sweep", "CSV table of n^2 V_n against the coefficient");
    common(sweep);
    with_k(sweep);
    sweep->add_option("--sides-range", c.sides_range, "Inclusive range A:B of side counts");
    sweep->add_option("--k-range", c.k_range, "Inclusive range C:D of k values");
    auto* lloyd = app.add_subcommand("lloyd", "Run Lloyd iteration on the boundary");
    common(lloyd);
    with_k(lloyd);
    with_n(lloyd);
    auto* validate = app.add_subcommand("validate", "Check closed forms against the numerical oracle");
    common(validate);
    with_k(validate);
    auto* render = app.add_subcommand("render", "Draw polygon, points and cell breakpoints as SVG");
    common(render);
    with_k(render);
    with_n(render);
    render->add_option("--svg", c.svg, "SVG output path");
    render->add_option("--svg-size", c.svg_size, "Image size in pixels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*quantize) return detail::cmd_quantize(c, out);
        if (*error) return detail::cmd_error(c, out);
        if (*coefficient) return detail::cmd_coefficient(c, out);
        if (*sweep) return detail::cmd_sweep(c, out);
        if (*lloyd) return detail::cmd_lloyd(c, out);
        if (*validate) return detail::cmd_validate(c, out);
        if (*render) return detail::cmd_render(c, out);
    } catch (const detail::UsageError& e) {
        err << "polyquant: " << e.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "polyquant: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "polyquant: " << e.what() << '\n';
        return validation_failed;
    }
    return usage_error;
}

}  // namespace polyquant::cli
