// graphmom: command-line front end.
//
// Exit codes: 0 success, 1 a checked property failed, 2 bad input.

#include <graphmom/graphmom.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace graphmom;
using io::InputError;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

struct Options {
    bool exact = true;
    std::uint64_t seed = 42;
    double budget = 0; // 0: module default
    std::string out;
};

void emit(const Options& opt, const std::string& text)
{
    if (opt.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot write " + opt.out);
    f << text << '\n';
}

void emit(const Options& opt, const json& j) { emit(opt, j.dump(2)); }

/// "3..8", "2,5,9" or "4".
std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    try {
        if (auto dots = text.find(".."); dots != std::string::npos) {
            const auto lo = std::stoul(text.substr(0, dots));
            const auto hi = std::stoul(text.substr(dots + 2));
            if (lo > hi) throw InputError("empty range " + text);
            for (auto v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    } catch (const std::logic_error&) {
        throw InputError("cannot parse list " + text);
    }
    if (out.empty()) throw InputError("empty list");
    return out;
}

// Kinds of target file, told apart by their keys.
bool is_graph(const json& j) { return j.is_object() && j.contains("nodes"); }
bool is_random(const json& j) { return j.is_object() && j.contains("dist"); }

// --- hom -------------------------------------------------------------------

template <class Scalar>
Scalar hom_value(const Multigraph& f, const WeightedGraph<Scalar>& h, bool density, bool injective)
{
    if (injective) return density ? t_inj(f, h) : inj(f, h);
    return density ? t(f, h) : hom(f, h);
}

int run_hom(const Options& opt, const std::string& graph_path, const std::string& target_path, bool density, bool injective)
{
    const json gj = io::read_json_file(graph_path);
    const json tj = io::read_json_file(target_path);
    QuantumGraph q = gj.contains("terms") ? io::quantum_from_json(gj) : QuantumGraph::single(io::graph_from_json(gj));

    if (is_random(tj)) {
        if (injective) throw InputError("--injective needs an ordinary weighted target");
        if (!opt.exact) throw InputError("randomly weighted targets are evaluated exactly; drop --float");
        const auto h = io::random_weighted_from_json(tj);
        Rational total = 0;
        for (const auto& [code, term] : q.terms())
            total += term.coefficient * (density ? t_rw(term.graph, h) : hom_rw(term.graph, h));
        emit(opt, to_string(total));
        return exit_ok;
    }
    if (opt.exact) {
        const auto h = is_graph(tj) ? graph_target(io::graph_from_json(tj)) : io::weighted_from_json<Rational>(tj);
        Rational total = 0;
        for (const auto& [code, term] : q.terms()) total += term.coefficient * hom_value(term.graph, h, density, injective);
        emit(opt, to_string(total));
    } else {
        const auto h = is_graph(tj) ? [&] {
            const auto e = graph_target(io::graph_from_json(tj));
            std::vector<double> a;
            for (const auto& x : e.alpha()) a.push_back(x.get_d());
            SquareMatrix<double> b(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = 0; j < e.size(); ++j) b(i, j) = e.beta(i, j).get_d();
            return WeightedGraph<double>(a, b);
        }()
                                    : io::weighted_from_json<double>(tj);
        double total = 0;
        for (const auto& [code, term] : q.terms())
            total += term.coefficient.get_d() * hom_value(term.graph, h, density, injective);
        emit(opt, format_scalar(total));
    }
    return exit_ok;
}

// --- connmat ---------------------------------------------------------------

template <class Scalar>
GraphParameter<Scalar> parameter_from_file(const json& tj, bool density)
{
    if (is_random(tj)) {
        if constexpr (is_exact_v<Scalar>) {
            const auto h = io::random_weighted_from_json(tj);
            return density ? density_parameter(h) : hom_parameter(h);
        } else {
            throw InputError("randomly weighted targets are evaluated exactly; drop --float");
        }
    }
    if (tj.contains("measures") || tj.contains("kernel")) return density_parameter(io::graphon_from_json<Scalar>(tj));
    const auto h = io::weighted_from_json<Scalar>(tj);
    return density ? density_parameter(h) : hom_parameter(h);
}

template <class Scalar>
json matrix_report(const Matrix<Scalar>& m)
{
    json out{{"size", m.rows()}, {"matrix", io::matrix_to_json(m)}};
    if constexpr (is_exact_v<Scalar>) {
        const auto cert = psd_check(m);
        out["rank"] = rank_exact(m);
        out["psd"] = cert.psd;
        if (!cert.psd) {
            out["witness"] = io::vector_to_json(cert.witness);
            out["value"] = to_string(cert.value);
        }
    } else {
        double cond = 0;
        out["rank"] = numeric_rank(m, 1e-10, &cond);
        out["condition"] = cond;
        const auto ev = symmetric_eigenvalues(m);
        out["min_eigenvalue"] = ev.empty() ? 0.0 : ev.front();
    }
    return out;
}

template <class Scalar>
int run_connmat_t(const Options& opt, const std::string& target_path, std::size_t k, std::size_t nodes, unsigned mult,
                  const std::string& special, std::size_t size, bool density)
{
    const json tj = io::read_json_file(target_path);
    const auto f = parameter_from_file<Scalar>(tj, density);
    Matrix<Scalar> m;
    json header;
    if (!special.empty()) {
        if (special == "E")
            m = E_matrix(f, size);
        else if (special == "C")
            m = C_matrix(f, size);
        else if (special == "B")
            m = B_matrix(f, size);
        else
            throw InputError("--special must be E, C or B");
        header = {{"special", special}};
    } else {
        const double budget = opt.budget > 0 ? opt.budget : default_enumeration_budget;
        std::vector<Multigraph> gens;
        try {
            gens = enumerate_k_labeled(k, nodes, mult, default_node_guard, budget);
        } catch (const std::length_error& e) {
            throw InputError(e.what());
        }
        m = connection_submatrix(f, k, gens);
        json g = json::array();
        for (const auto& x : gens) g.push_back(io::graph_to_json(x));
        header = {{"k", k}, {"generators", g}};
    }
    json report = matrix_report(m);
    report.update(header);
    emit(opt, report);
    if constexpr (is_exact_v<Scalar>) return report["psd"].get<bool>() ? exit_ok : exit_failed;
    return exit_ok;
}

// --- spectrum --------------------------------------------------------------

template <class Scalar>
int run_spectrum_t(const Options& opt, const std::string& path, const std::string& cycles)
{
    const auto w = io::graphon_from_json<Scalar>(io::read_json_file(path));
    const auto ev = eigenvalues_step(w);
    json rows = json::array();
    bool ok = true;
    for (std::size_t n : parse_list(cycles)) {
        if (n < 2) throw InputError("cycle lengths start at 2");
        const Scalar density = t(family::cycle(n), w);
        const double spectral = cycle_density_spectral(w, n);
        const double diff = std::abs(to_double(density) - spectral);
        ok = ok && diff <= 1e-9;
        rows.push_back({{"n", n}, {"t", io::to_json(density)}, {"power_sum", spectral}, {"difference", diff}});
    }
    emit(opt, json{{"eigenvalues", ev}, {"cycles", rows}});
    return ok ? exit_ok : exit_failed;
}

// --- moments ---------------------------------------------------------------

int run_moments_check(const Options& opt, const std::string& path, const std::string& domain_flag, std::size_t order)
{
    const json j = io::read_json_file(path);
    std::string domain = domain_flag;
    if (domain.empty()) domain = j.is_object() ? j.value("domain", std::string("dd")) : "dd";
    if (domain != "01" && domain != "dd") throw InputError("--domain must be 01 or dd");
    if (!opt.exact) {
        const auto a = io::sequence_from_json<double>(j);
        Matrix<double> h(a.size() ? (a.size() + 1) / 2 : 0, a.size() ? (a.size() + 1) / 2 : 0);
        for (std::size_t r = 0; r < h.rows(); ++r)
            for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = a[r + c];
        const auto ev = symmetric_eigenvalues(h);
        const bool psd = ev.empty() || ev.front() >= -1e-12;
        emit(opt, json{{"psd", psd}, {"rank", numeric_rank(h)}, {"min_eigenvalue", ev.empty() ? 0.0 : ev.front()}});
        return psd ? exit_ok : exit_failed;
    }
    const auto a = io::sequence_from_json<Rational>(j);
    if (a.empty()) throw InputError("empty sequence");
    const MomentSequence<Rational> seq{a, domain == "01" ? MomentDomain::unit_interval : MomentDomain::symmetric};
    const auto rep = hankel_psd_rank(seq);
    json out{{"psd", rep.certificate.psd}, {"rank", rep.rank}};
    bool ok = rep.certificate.psd;
    if (!rep.certificate.psd) {
        out["witness"] = io::vector_to_json(rep.certificate.witness);
        out["value"] = to_string(rep.certificate.value);
    }
    if (domain == "01") {
        const auto h = hausdorff_check(seq, order ? order : a.size() - 1);
        out["hausdorff"] = {{"pass", h.pass}};
        if (!h.pass) out["hausdorff"].update({{"n", h.n}, {"k", h.k}, {"value", to_string(h.value)}});
        ok = ok && h.pass;
    }
    emit(opt, out);
    return ok ? exit_ok : exit_failed;
}

int run_moments_recover(const Options& opt, const std::string& path, std::size_t atoms)
{
    const json j = io::read_json_file(path);
    try {
        if (!opt.exact) {
            const auto mu = recover_finite_support(io::sequence_from_json<double>(j), atoms);
            emit(opt, json{{"exact", false}, {"atoms", mu.atoms}, {"weights", mu.weights}});
            return exit_ok;
        }
        const auto rec = recover_finite_support(io::sequence_from_json<Rational>(j), atoms);
        if (rec.exact)
            emit(opt, json{{"exact", true},
                           {"atoms", io::vector_to_json(rec.measure.atoms)},
                           {"weights", io::vector_to_json(rec.measure.weights)}});
        else
            emit(opt, json{{"exact", false}, {"atoms", rec.approximate.atoms}, {"weights", rec.approximate.weights}});
        return exit_ok;
    } catch (const std::domain_error& e) {
        std::cerr << "not recoverable: " << e.what() << '\n';
        return exit_failed;
    }
}

// --- rankgrowth ------------------------------------------------------------

int run_rankgrowth(const Options& opt, const std::string& path, const std::string& range, const std::string& report_path,
                   std::size_t qn_nodes)
{
    const auto h = io::any_random_weighted_from_json(io::read_json_file(path));
    const auto ns = parse_list(range);
    const double budget = opt.budget > 0 ? opt.budget : default_pattern_budget;
    GrowthReport rep;
    try {
        rep = classify_growth(h, ns.front(), ns.back(), qn_nodes, budget);
    } catch (const std::length_error& e) {
        throw InputError(e.what());
    }
    const auto a = compute_A(h);
    json rows = json::array();
    bool ok = true;
    for (const auto& r : rep.rows) {
        json row{{"n", r.n}, {"dim_Pn", r.dim_pn}, {"root", r.root}, {"lower", r.lower}, {"upper", r.upper}};
        if (r.dim_qn_lower) {
            row["dim_Qn_lower"] = *r.dim_qn_lower;
            // a rank that is still growing proves nothing about infinite rank
            row["Qn_certificate"] = r.qn_saturated ? "saturated" : "no finite certificate";
        }
        const double d = static_cast<double>(r.dim_pn);
        ok = ok && d >= r.lower * (1 - 1e-9) && d <= r.upper * (1 + 1e-9);
        rows.push_back(row);
    }
    json out{{"type", rep.type == GrowthType::ordinary ? "ordinary" : "proper"},
             {"nodes", rep.nodes},
             {"reduced_nodes", rep.reduced_nodes},
             {"max_support", rep.max_support},
             {"A", rep.a_value},
             {"predicted_limit", rep.predicted_limit},
             {"rows", rows}};
    if (a.exact) out["A_exact"] = to_string(*a.exact);
    Options o = opt;
    if (!report_path.empty()) o.out = report_path;
    emit(o, out);
    return ok ? exit_ok : exit_failed;
}

// --- sample ----------------------------------------------------------------

int run_sample(const Options& opt, const std::string& target_path, const std::string& graph_path, const std::string& sizes,
               std::size_t reps)
{
    const json tj = io::read_json_file(target_path);
    const auto f = io::graph_from_json(io::read_json_file(graph_path));
    const auto ns = parse_list(sizes);
    if (std::find(ns.begin(), ns.end(), std::size_t{0}) != ns.end()) throw InputError("sample sizes must be positive");
    if (reps < 2) throw InputError("--reps must be at least 2");
    std::vector<ConvergenceRow> rows;
    if (is_random(tj))
        rows = convergence_experiment(f, io::random_weighted_from_json(tj), ns, reps, opt.seed);
    else if (opt.exact)
        rows = convergence_experiment(f, io::graphon_from_json<Rational>(tj), ns, reps, opt.seed);
    else
        rows = convergence_experiment(f, io::graphon_from_json<double>(tj), ns, reps, opt.seed);
    std::ostringstream csv;
    csv.precision(17);
    csv << "n,mean,variance,bound";
    bool ok = true;
    for (const auto& r : rows) {
        csv << '\n' << r.n << ',' << r.mean << ',' << r.variance << ',' << r.bound;
        ok = ok && r.variance_ok && r.mean_ok;
    }
    emit(opt, csv.str());
    return ok ? exit_ok : exit_failed;
}

// --- verify ----------------------------------------------------------------

int run_verify(const Options& opt, const std::string& suite, const std::vector<int>& criteria, bool list)
{
    if (list) {
        std::ostringstream os;
        for (const auto& s : verify::suites()) {
            os << s.name << ':';
            for (int c : s.criteria) os << ' ' << c;
            os << '\n';
        }
        emit(opt, os.str());
        return exit_ok;
    }
    std::vector<int> ids = criteria;
    if (ids.empty()) {
        const auto& all = verify::suites();
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.name == suite; });
        if (it == all.end()) throw InputError("unknown suite " + suite);
        ids = it->criteria;
    }
    std::ostringstream os;
    bool ok = true;
    for (int id : ids) {
        if (id < 1 || id > 13) throw InputError("criteria are numbered 1..13");
        const auto r = verify::run_criterion(id);
        ok = ok && r.pass;
        os << verify::format_result(r) << '\n';
    }
    std::string text = os.str();
    text.pop_back();
    emit(opt, text);
    return ok ? exit_ok : exit_failed;
}

// --- graph -----------------------------------------------------------------

int run_graph(const Options& opt, const std::string& action, const std::string& a_path, const std::string& b_path,
              std::size_t k, std::size_t nodes, unsigned mult)
{
    if (action == "enumerate") {
        const double budget = opt.budget > 0 ? opt.budget : default_enumeration_budget;
        std::vector<Multigraph> gens;
        try {
            gens = enumerate_k_labeled(k, nodes, mult, default_node_guard, budget);
        } catch (const std::length_error& e) {
            throw InputError(e.what());
        }
        json out = json::array();
        for (const auto& g : gens) out.push_back(io::graph_to_json(g));
        emit(opt, out);
        return exit_ok;
    }
    if (a_path.empty()) throw InputError("graph " + action + " needs --graph");
    const auto a = io::graph_from_json(io::read_json_file(a_path));
    if (action == "canonical") {
        const auto code = canonical_code(a, LabelMode::fixed);
        emit(opt, json{{"code", code.to_string()}, {"graph", io::graph_to_json(decode(code))}});
        return exit_ok;
    }
    if (b_path.empty()) throw InputError("graph " + action + " needs --other");
    const auto b = io::graph_from_json(io::read_json_file(b_path));
    if (action == "glue") {
        try {
            emit(opt, io::graph_to_json(glue_product(a, b)));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        return exit_ok;
    }
    if (action == "isomorphic") {
        const bool iso = isomorphic(a, b);
        emit(opt, std::string(iso ? "true" : "false"));
        return iso ? exit_ok : exit_failed;
    }
    throw InputError("unknown graph action " + action);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graph parameters, connection matrices and moment sequences"};
    app.require_subcommand(1);
    Options opt;
    app.fallthrough(); // global flags may follow the subcommand
    bool use_float = false;
    auto* exact_flag = app.add_flag("--exact", "Exact rational arithmetic (default)");
    auto* float_flag = app.add_flag("--float", use_float, "Double-precision arithmetic");
    exact_flag->excludes(float_flag);
    app.add_option("--seed", opt.seed, "Random seed");
    app.add_option("--budget", opt.budget, "Work budget for enumerations");
    app.add_option("--out", opt.out, "Write output to this file");

    std::string graph_path, target_path, other_path;
    bool density = false, injective = false;
    auto* hom_cmd = app.add_subcommand("hom", "Homomorphism number or density of a graph or quantum graph");
    hom_cmd->add_option("--graph", graph_path, "Graph or quantum graph JSON")->required();
    hom_cmd->add_option("--target", target_path, "Target JSON (graph, weighted or randomly weighted)")->required();
    hom_cmd->add_flag("--density", density, "Normalized density instead of the count");
    hom_cmd->add_flag("--injective", injective, "Injective homomorphisms only");

    std::size_t k = 2, nodes = 4, size = 8;
    unsigned mult = 2;
    std::string special;
    auto* conn_cmd = app.add_subcommand("connmat", "Finite section of a connection matrix");
    conn_cmd->add_option("--target", target_path, "Target or graphon JSON")->required();
    conn_cmd->add_option("--k", k, "Number of labels");
    conn_cmd->add_option("--nodes", nodes, "Node budget for generators");
    conn_cmd->add_option("--mult", mult, "Multiplicity budget for generators");
    conn_cmd->add_option("--special", special, "E, C or B family instead of all generators");
    conn_cmd->add_option("--size", size, "Size of the E/C/B matrix");
    conn_cmd->add_flag("--density", density, "Use densities instead of homomorphism numbers");

    std::string cycles = "3..8";
    auto* spec_cmd = app.add_subcommand("spectrum", "Operator eigenvalues and cycle densities of a step graphon");
    spec_cmd->add_option("--graphon", target_path, "Graphon JSON")->required();
    spec_cmd->add_option("--cycles", cycles, "Cycle lengths, e.g. 3..8");

    std::string seq_path, domain;
    std::size_t order = 0, atoms = 1;
    auto* mom_cmd = app.add_subcommand("moments", "Moment sequences");
    mom_cmd->require_subcommand(1);
    auto* check_cmd = mom_cmd->add_subcommand("check", "Hankel semidefiniteness and Hausdorff differences");
    check_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
    check_cmd->add_option("--domain", domain, "01 for [0,1], dd for [-d,d]");
    check_cmd->add_option("--order", order, "Highest difference order (default: all)");
    auto* rec_cmd = mom_cmd->add_subcommand("recover", "Finite-support measure from its moments");
    rec_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
    rec_cmd->add_option("--atoms", atoms, "Maximum number of atoms")->required();

    std::string range = "1..3", report_path;
    std::size_t qn_nodes = 0;
    auto* rank_cmd = app.add_subcommand("rankgrowth", "Growth of dim(P_n) for a randomly weighted target");
    rank_cmd->add_option("--target", target_path, "Randomly weighted (or weighted) graph JSON")->required();
    rank_cmd->add_option("--n", range, "Range of n, e.g. 2..5");
    rank_cmd->add_option("--report", report_path, "Write the JSON report here");
    rank_cmd->add_option("--qn-nodes", qn_nodes, "Node budget for lower bounds on dim(Q_n) (0: skip)");

    std::string sizes = "25,100,400";
    std::size_t reps = 200;
    auto* sample_cmd = app.add_subcommand("sample", "Convergence of injective densities of sampled graphs");
    sample_cmd->add_option("--target", target_path, "Graphon or randomly weighted graph JSON")->required();
    sample_cmd->add_option("--graph", graph_path, "Graph JSON")->required();
    sample_cmd->add_option("--n", sizes, "Sample sizes");
    sample_cmd->add_option("--reps", reps, "Replicates per size");

    std::string suite = "all";
    std::vector<int> criteria;
    bool list = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
    verify_cmd->add_option("--suite", suite, "Suite name");
    verify_cmd->add_option("--criterion", criteria, "Individual criteria (1..13)");
    verify_cmd->add_flag("--list", list, "List the suites");

    std::string action;
    auto* graph_cmd = app.add_subcommand("graph", "Graph utilities");
    graph_cmd->add_option("action", action, "canonical | enumerate | glue | isomorphic")->required();
    graph_cmd->add_option("--graph", graph_path, "Graph JSON");
    graph_cmd->add_option("--other", other_path, "Second graph JSON");
    graph_cmd->add_option("--k", k, "Labels (enumerate)");
    graph_cmd->add_option("--nodes", nodes, "Node budget (enumerate)");
    graph_cmd->add_option("--mult", mult, "Multiplicity budget (enumerate)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }
    opt.exact = !use_float;

    try {
        if (*hom_cmd) return run_hom(opt, graph_path, target_path, density, injective);
        if (*conn_cmd)
            return opt.exact ? run_connmat_t<Rational>(opt, target_path, k, nodes, mult, special, size, density)
                             : run_connmat_t<double>(opt, target_path, k, nodes, mult, special, size, density);
        if (*spec_cmd)
            return opt.exact ? run_spectrum_t<Rational>(opt, target_path, cycles)
                             : run_spectrum_t<double>(opt, target_path, cycles);
        if (*check_cmd) return run_moments_check(opt, seq_path, domain, order);
        if (*rec_cmd) return run_moments_recover(opt, seq_path, atoms);
        if (*rank_cmd) return run_rankgrowth(opt, target_path, range, report_path, qn_nodes);
        if (*sample_cmd) return run_sample(opt, target_path, graph_path, sizes, reps);
        if (*verify_cmd) return run_verify(opt, suite, criteria, list);
        if (*graph_cmd) return run_graph(opt, action, graph_path, other_path, k, nodes, mult);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::length_error& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return exit_input;
    } catch (const std::domain_error& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return exit_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
