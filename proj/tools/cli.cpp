#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "galerkin/galerkin.hpp"

namespace galerkin::cli {
namespace {

using Cell = std::variant<std::monostate, long long, double>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<long long>(c)) {
        return std::to_string(std::get<long long>(c));
    }
    if (std::holds_alternative<double>(c)) {
        return format_double(std::get<double>(c));
    }
    return "";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (std::holds_alternative<long long>(c)) {
        return std::get<long long>(c);
    }
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (!std::isfinite(v)) {
            return nullptr;
        }
        return v;
    }
    return nullptr;
}

void write_table(const Table& t, Format format, std::ostream& os) {
    if (format == Format::csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << csv_cell(row[i]);
            }
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["command"] = t.command;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            arr.push_back(json_cell(row[c]));
        }
        doc[t.columns[c]] = std::move(arr);
    }
    for (const auto& [key, value] : t.extra.items()) {
        doc[key] = value;
    }
    os << doc.dump(2) << '\n';
}

/// Two-column "x f(x)" table, x strictly increasing, linearly interpolated and
/// held constant beyond the ends.
RealFunction load_tabulated_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open f file '" + path + "'");
    }
    std::vector<double> xs;
    std::vector<double> fs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        double x = 0.0;
        double f = 0.0;
        if (!(ls >> x >> f) || !std::isfinite(x) || !std::isfinite(f)) {
            throw InvalidArgument("f file '" + path + "': malformed line '" + line + "'");
        }
        if (!xs.empty() && x <= xs.back()) {
            throw InvalidArgument("f file '" + path + "': abscissae must be strictly increasing");
        }
        xs.push_back(x);
        fs.push_back(f);
    }
    if (xs.empty()) {
        throw InvalidArgument("f file '" + path + "' has no samples");
    }
    return [xs = std::move(xs), fs = std::move(fs)](double x) {
        if (x <= xs.front()) return fs.front();
        if (x >= xs.back()) return fs.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return (1.0 - w) * fs[i - 1] + w * fs[i];
    };
}

RealFunction resolve_forcing(const std::string& name, const std::optional<std::string>& file, double lambda) {
    if (file) {
        return load_tabulated_function(*file);
    }
    if (name == "manufactured") {
        return forcing::manufactured_cubic(lambda);
    }
    if (auto f = forcing::by_name(name)) {
        return *f;
    }
    throw InvalidArgument("unknown forcing '" + name + "'");
}

BasisFamily bvp_family(const std::string& name, int n) {
    if (name == "monomial") return BasisFamily(BasisKind::MonomialBubble, n);
    if (name == "sine") return BasisFamily(BasisKind::Sine, n);
    if (name == "normalized-sine") return BasisFamily(BasisKind::NormalizedSine, n);
    throw InvalidArgument("unknown family '" + name + "' (expected monomial, sine or normalized-sine)");
}

// ---------------------------------------------------------------------------

Table run_cond_table(const CondTableArgs& a) {
    Table t{"cond-table", {"N", "cond2"}, {}};
    for (const auto& row : condition_table(a.n_max, a.convention)) {
        t.rows.push_back({static_cast<long long>(row.n), row.cond2});
    }
    t.extra["convention"] = a.convention == IndexConvention::shifted ? "shifted" : "derived";
    return t;
}

Table run_bvp(const BvpArgs& a) {
    const BasisFamily family = bvp_family(a.family, a.n);
    const RealFunction f = resolve_forcing(a.f, a.f_file, 0.0);
    const CoefficientVector<double> u = solve_bvp(f, family);
    Table t{"bvp", {"j", "xi"}, {}};
    for (int j = 1; j <= a.n; ++j) {
        t.rows.push_back({static_cast<long long>(j), u[j]});
    }
    t.extra["family"] = std::string(to_string(family.kind()));
    t.extra["u_at_half"] = u.evaluate(0.5);
    return t;
}

Table run_kernel(const KernelArgs& a) {
    Table t{"kernel", {"x", "t", "K"}, {}};
    if (a.x && a.t) {
        t.rows.push_back({*a.x, *a.t, kernel_value(*a.x, *a.t, a.n)});
        return t;
    }
    for (int i = 0; i <= a.grid; ++i) {
        for (int j = 0; j <= a.grid; ++j) {
            const double x = static_cast<double>(i) / a.grid;
            const double s = static_cast<double>(j) / a.grid;
            t.rows.push_back({x, s, kernel_value(x, s, a.n)});
        }
    }
    return t;
}

Table run_fredholm2(const Fredholm2Args& a) {
    const auto kernel = kernels::by_name(a.kernel);
    const auto rhs = kernels::rhs_by_name(a.f);
    SecondKindProblem p{a.lambda, *kernel, *rhs, a.n};
    const CoefficientVector<Complex> c = solve_second_kind(p);
    Table t{"fredholm2", {"j", "re", "im"}, {}};
    for (int j = -a.n; j <= a.n; ++j) {
        t.rows.push_back({static_cast<long long>(j), c[j].real(), c[j].imag()});
    }
    const Vector<Complex> moments = residual_moments(p, c, periodic_trapezoid(8 * (2 * a.n + 1)));
    t.extra["max_residual_moment"] = norm_inf(moments);
    return t;
}

Table run_wing(const WingArgs& a) {
    const WingProblem w{a.n, a.t1, a.t2};
    const WingSystem sys = wing_generate(w);
    if (a.export_matrix) {
        std::ofstream os(*a.export_matrix);
        if (!os) {
            throw InvalidArgument("cannot write matrix to '" + *a.export_matrix + "'");
        }
        write_dense(os, sys.a);
    }
    const WingReport r = wing_solve_naive_vs_tsvd(w, a.k);
    const Cell naive = r.naive_error ? Cell(*r.naive_error) : Cell{};

    Table t;
    t.command = "wing";
    const std::vector<double> s = w.midpoints();
    if (a.vectors) {
        t.columns = {"i", "s", "b", "x_exact", "x_naive", "x_tsvd"};
        for (int i = 0; i < a.n; ++i) {
            const Cell xn = r.x_naive.empty() ? Cell{} : Cell(r.x_naive[i]);
            t.rows.push_back({static_cast<long long>(i + 1), s[i], sys.b[i], sys.x_exact[i], xn, r.x_tsvd[i]});
        }
    } else {
        t.columns = {"n", "cond2", "naive_err", "tsvd_k", "tsvd_err"};
        t.rows.push_back({static_cast<long long>(r.n), r.cond2, naive, static_cast<long long>(r.tsvd_k), r.tsvd_error});
    }
    t.extra["t1"] = a.t1;
    t.extra["t2"] = a.t2;
    if (!a.vectors) {
        t.extra["b"] = sys.b;
        t.extra["x_exact"] = sys.x_exact;
        t.extra["x_tsvd"] = r.x_tsvd;
        if (!r.x_naive.empty()) {
            t.extra["x_naive"] = r.x_naive;
        } else {
            t.extra["x_naive"] = nullptr;
        }
    }
    return t;
}

Table run_nonlinear(const NonlinearArgs& a) {
    NonlinearProblem base{a.lambda, resolve_forcing(a.f, a.f_file, a.lambda), a.m};
    std::vector<int> ms = a.m_list;
    if (ms.empty()) {
        for (int m = 1; m <= a.m; ++m) {
            ms.push_back(m);
        }
    }
    base.m = ms.back();
    const NewtonOptions opts{a.tol, a.max_iters, 30};
    const std::vector<ConvergenceRow> rows = convergence_study(base, ms, opts);

    Table t{"nonlinear", {"m", "norm_xi", "dist_to_finest", "newton_iters"}, {}};
    auto residuals = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        t.rows.push_back({static_cast<long long>(r.m), r.norm_xi, r.dist_to_finest,
                          static_cast<long long>(r.newton_iters)});
        residuals.push_back(r.residual_norm);
    }
    t.extra["residual_norm"] = std::move(residuals);
    t.extra["lambda"] = a.lambda;
    t.extra["lambda1"] = kLambda1;
    if (base.solvability_guaranteed()) {
        t.extra["apriori_radius"] = apriori_radius(base);
    } else {
        t.extra["apriori_radius"] = nullptr;
    }
    return t;
}

void validate(const ExperimentConfig& cfg) {
    std::visit(
        [](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, CondTableArgs>) {
                if (a.n_max < 1 || a.n_max > 12) {
                    throw InvalidArgument("--n-max must be in [1, 12]");
                }
            } else if constexpr (std::is_same_v<A, BvpArgs>) {
                if (a.n < 1) throw InvalidArgument("--n must be >= 1");
                bvp_family(a.family, a.n);
                if (!a.f_file && !forcing::by_name(a.f)) throw InvalidArgument("unknown forcing '" + a.f + "'");
            } else if constexpr (std::is_same_v<A, KernelArgs>) {
                if (a.n < 1) throw InvalidArgument("--n must be >= 1");
                if (a.grid < 1) throw InvalidArgument("--grid must be >= 1");
                if (a.x.has_value() != a.t.has_value()) throw InvalidArgument("--x and --t go together");
                for (const auto& p : {a.x, a.t}) {
                    if (p && !(*p >= 0.0 && *p <= 1.0)) throw InvalidArgument("kernel points must lie in [0, 1]");
                }
            } else if constexpr (std::is_same_v<A, Fredholm2Args>) {
                if (a.n < 1) throw InvalidArgument("--n must be >= 1");
                if (a.lambda == 0.0 || !std::isfinite(a.lambda)) throw InvalidArgument("--lambda must be finite and nonzero");
                if (!kernels::by_name(a.kernel)) throw InvalidArgument("unknown kernel '" + a.kernel + "'");
                if (!kernels::rhs_by_name(a.f)) throw InvalidArgument("unknown right-hand side '" + a.f + "'");
            } else if constexpr (std::is_same_v<A, WingArgs>) {
                WingProblem{a.n, a.t1, a.t2}.validate();
                if (a.k && (*a.k < 1 || *a.k > static_cast<std::size_t>(a.n))) {
                    throw TruncationOutOfRange("--k must be in [1, n]");
                }
            } else if constexpr (std::is_same_v<A, NonlinearArgs>) {
                if (a.m < 1) throw InvalidArgument("--m must be >= 1");
                if (!(a.tol > 0.0)) throw InvalidArgument("--tol must be positive");
                if (a.max_iters < 1) throw InvalidArgument("--max-iters must be >= 1");
                if (!std::isfinite(a.lambda)) throw InvalidArgument("--lambda must be finite");
                if (!a.f_file && a.f != "manufactured" && !forcing::by_name(a.f)) {
                    throw InvalidArgument("unknown forcing '" + a.f + "'");
                }
                for (std::size_t i = 0; i < a.m_list.size(); ++i) {
                    if (a.m_list[i] < 1 || (i > 0 && a.m_list[i] <= a.m_list[i - 1])) {
                        throw InvalidArgument("--m-list must be positive and strictly increasing");
                    }
                }
            }
        },
        cfg.params);
}

}  // namespace

ParseResult parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Galerkin method laboratory", argv.empty() ? "galerkin_lab" : argv.front()};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", output, "Write the report to this file instead of stdout");
    };

    CondTableArgs cond;
    std::string convention = "shifted";
    auto* s_cond = app.add_subcommand("cond-table", "2-norm condition numbers of the monomial stiffness matrix");
    s_cond->add_option("--n-max", cond.n_max, "Largest N (rows N = 3..n-max)");
    s_cond->add_option("--convention", convention, "Closed-form index convention")
        ->check(CLI::IsMember({"shifted", "derived"}));
    add_common(s_cond);

    BvpArgs bvp;
    std::string bvp_file;
    auto* s_bvp = app.add_subcommand("bvp", "Solve -u'' = f, u(0) = u(1) = 0");
    s_bvp->add_option("--family", bvp.family, "monomial | sine | normalized-sine");
    s_bvp->add_option("--n", bvp.n, "Basis dimension");
    s_bvp->add_option("--f", bvp.f, "one | linear | sinpi | sin2pi | step | zero");
    s_bvp->add_option("--f-file", bvp_file, "Two-column 'x f(x)' table, linearly interpolated");
    add_common(s_bvp);

    KernelArgs kernel;
    double kx = 0.0;
    double kt = 0.0;
    auto* s_kernel = app.add_subcommand("kernel", "Evaluate the sine-series kernel K_N(x, t)");
    s_kernel->add_option("--n", kernel.n, "Number of terms");
    s_kernel->add_option("--grid", kernel.grid, "Uniform grid with this many intervals per axis");
    auto* ox = s_kernel->add_option("--x", kx, "Single evaluation point x");
    auto* ot = s_kernel->add_option("--t", kt, "Single evaluation point t");
    add_common(s_kernel);

    Fredholm2Args fr;
    auto* s_fr = app.add_subcommand("fredholm2", "Second-kind equation with the exponential basis");
    s_fr->add_option("--n", fr.n, "Modes -n..n");
    s_fr->add_option("--lambda", fr.lambda, "Real lambda");
    s_fr->add_option("--kernel", fr.kernel, "cos | separable | complex | zero");
    s_fr->add_option("--f", fr.f, "exp1 | exp2 | cos2 | one");
    add_common(s_fr);

    WingArgs wing;
    std::size_t wk = 0;
    std::string wexport;
    auto* s_wing = app.add_subcommand("wing", "First-kind wing problem: naive solve vs truncated SVD");
    s_wing->add_option("--n", wing.n, "Discretization size");
    s_wing->add_option("--t1", wing.t1, "Left breakpoint");
    s_wing->add_option("--t2", wing.t2, "Right breakpoint");
    auto* owk = s_wing->add_option("--k", wk, "TSVD truncation (default: best against x_exact)");
    s_wing->add_flag("--vectors", wing.vectors, "Emit the per-index table instead of the summary");
    s_wing->add_option("--export-matrix", wexport, "Write A in plain-text dense format");
    add_common(s_wing);

    NonlinearArgs nl;
    std::string nl_file;
    auto* s_nl = app.add_subcommand("nonlinear", "Galerkin solve of -u'' - lambda u + u^3 = f");
    s_nl->add_option("--lambda", nl.lambda, "Real lambda");
    s_nl->add_option("--f", nl.f, "manufactured | one | linear | sinpi | sin2pi | step | zero");
    s_nl->add_option("--f-file", nl_file, "Two-column 'x f(x)' table, linearly interpolated");
    s_nl->add_option("--m", nl.m, "Finest subspace dimension (study runs m = 1..M)");
    s_nl->add_option("--m-list", nl.m_list, "Explicit increasing list of dimensions")->delimiter(',');
    s_nl->add_option("--tol", nl.tol, "Newton tolerance on ||F||_2");
    s_nl->add_option("--max-iters", nl.max_iters, "Newton iteration cap");
    add_common(s_nl);

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        return {std::nullopt, kExitOk, app.help()};
    } catch (const CLI::CallForAllHelp&) {
        return {std::nullopt, kExitOk, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        return {std::nullopt, kExitValidation, std::string(e.what()) + "\n\n" + app.help()};
    }

    ExperimentConfig cfg;
    if (s_cond->parsed()) {
        cond.convention = convention == "derived" ? IndexConvention::derived : IndexConvention::shifted;
        cfg.params = cond;
    } else if (s_bvp->parsed()) {
        if (!bvp_file.empty()) bvp.f_file = bvp_file;
        cfg.params = bvp;
    } else if (s_kernel->parsed()) {
        if (ox->count() > 0) kernel.x = kx;
        if (ot->count() > 0) kernel.t = kt;
        cfg.params = kernel;
    } else if (s_fr->parsed()) {
        cfg.params = fr;
    } else if (s_wing->parsed()) {
        if (owk->count() > 0) wing.k = wk;
        if (!wexport.empty()) wing.export_matrix = wexport;
        cfg.params = wing;
    } else {
        if (!nl_file.empty()) nl.f_file = nl_file;
        cfg.params = nl;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;
    if (!output.empty()) {
        cfg.output = output;
    }

    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        return {std::nullopt, kExitValidation, e.what()};
    }
    return {std::move(cfg), kExitOk, {}};
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Table table = std::visit(
            [](const auto& a) -> Table {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, CondTableArgs>) return run_cond_table(a);
                else if constexpr (std::is_same_v<A, BvpArgs>) return run_bvp(a);
                else if constexpr (std::is_same_v<A, KernelArgs>) return run_kernel(a);
                else if constexpr (std::is_same_v<A, Fredholm2Args>) return run_fredholm2(a);
                else if constexpr (std::is_same_v<A, WingArgs>) return run_wing(a);
                else return run_nonlinear(a);
            },
            config.params);
        if (config.output) {
            std::ofstream os(*config.output);
            if (!os) {
                err << "error: cannot write '" << *config.output << "'\n";
                return kExitValidation;
            }
            write_table(table, config.format, os);
        } else {
            write_table(table, config.format, out);
        }
        return kExitOk;
    } catch (const SingularMatrix& e) {
        err << "SingularMatrix: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NoConvergence& e) {
        err << "NoConvergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NumericalFailure& e) {
        err << "NumericalFailure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    const ParseResult parsed = parse_args(argv);
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message << (parsed.message.ends_with('\n') ? "" : "\n");
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

}  // namespace galerkin::cli
