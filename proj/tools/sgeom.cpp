#include "CLI11.hpp"
#include "sgeom/model.hpp"

#include <iostream>
#include <set>

using namespace sgeom;

namespace {

struct Options {
    int max_degree = 4;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

std::string render_chart(const Chart &c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.even_count(); ++i)
        s += (i ? ", " : "") + c.even(i).name + (c.even(i).invertible ? "*" : "");
    s += " | ";
    for (std::size_t j = 0; j < c.odd_count(); ++j)
        s += (j ? ", " : "") + c.generator_name(c.even_count() + j);
    return s + ")";
}

// collects checks across sections; exit code from all of them
class Output {
  public:
    void line(const std::string &s) { std::cout << s << "\n"; }
    void report(const Report &r) {
        std::cout << r.render();
        total_ += r.checks().size();
        failed_ += r.failures().size();
    }
    int finish() {
        if (failed_)
            std::cout << "RESULT FAIL (" << failed_ << " of " << total_ << " checks failed)\n";
        else
            std::cout << "RESULT PASS (" << total_ << " checks)\n";
        return failed_ ? 1 : 0;
    }

  private:
    std::size_t total_ = 0, failed_ = 0;
};

void describe_group(Output &out, const HopfGroup &g) {
    std::string basis;
    for (auto &b : g.basis_names())
        basis += (basis.empty() ? "" : " ") + b;
    out.line("group " + g.name() + " " + render_chart(*g.chart()) + ", basis " + basis);
}

// hopf report first; later stages need a valid group
bool hopf_stage(Output &out, const HopfGroup &g) {
    describe_group(out, g);
    auto r = validate_hopf(g);
    out.report(r);
    return r.passed();
}

int cmd_check_hopf(const std::string &file) {
    Output out;
    hopf_stage(out, *load_group(file));
    return out.finish();
}

int cmd_lie_algebra(const std::string &file) {
    Output out;
    auto g = load_group(file);
    if (!hopf_stage(out, *g))
        return out.finish();
    auto lie = lie_algebra_of(*g);
    std::string par;
    for (std::size_t k = 0; k < lie->dim(); ++k)
        par += (k ? ", " : "") + lie->name(k) + (lie->parity(k) ? " odd" : " even");
    out.line("lie algebra: " + par);
    for (auto &l : lie->bracket_table())
        out.line(l);
    out.report(lie->validate());
    return out.finish();
}

int cmd_maurer_cartan(const std::string &file) {
    Output out;
    auto g = load_group(file);
    if (!hopf_stage(out, *g))
        return out.finish();
    auto lie = lie_algebra_of(*g);
    auto theta = maurer_cartan(g, lie);
    out.line("theta = " + theta.to_string());
    out.report(check_maurer_cartan(g, lie, theta));
    out.report(parallelizability(g));
    return out.finish();
}

enum class Stage { Connection, Curvature, Identities };

int cmd_bundle(const std::string &file, Stage stage, const Options &opt) {
    Output out;
    BundleModel m;
    try {
        m = load_bundle(file, opt.seed);
    } catch (const BundleError &e) {
        out.line(std::string("bundle: ") + e.what());
        out.report(e.report());
        return out.finish();
    }
    const auto &b = *m.bundle;
    out.line("bundle " + m.name + ": base " + render_chart(*b.base()) + ", group " + b.group()->name() + ", total " +
             render_chart(*b.chart()));
    out.report(b.report());
    out.line("beta = " + m.beta.to_string());
    auto c = connection_from_beta(m.bundle, m.beta);
    out.line("omega = " + c.omega.to_string());
    out.report(c.report);
    if (stage == Stage::Connection)
        return out.finish();
    auto f = curvature(c.omega);
    out.line("F = " + f.to_string());
    out.line(std::string("flat: ") + (f.is_zero() ? "yes" : "no"));
    if (stage == Stage::Curvature)
        return out.finish();
    out.report(curvature_identities(c, {opt.threads}));
    if (m.gauge) {
        auto sp = section_pullback(c, *m.gauge);
        out.line("s*omega = " + sp.direct.to_string());
        out.report(sp.report);
    }
    auto k = kappa0(c);
    out.line("kappa0(omega) = " + k.omega.to_string());
    out.line("kappa0(F) = " + k.projected_curvature.to_string());
    out.report(k.report);
    return out.finish();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// identifiers of the expression in order of first appearance, differentials resolved to their generator
std::vector<std::string> scan_generators(const std::string &expr, const std::set<std::string> &declared) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto add = [&](const std::string &n) {
        if (seen.insert(n).second)
            out.push_back(n);
    };
    std::size_t i = 0;
    while (i < expr.size()) {
        if (!ident_start(expr[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < expr.size() && ident_char(expr[j]))
            ++j;
        std::string w = expr.substr(i, j - i);
        i = j;
        if (w.find('\'') != std::string::npos)
            throw ParseError("primed identifier '" + w + "' is reserved for tensor copies", 1,
                             static_cast<int>(j - w.size()) + 1);
        if (w == "d")
            continue;
        if (w.size() > 1 && w[0] == 'd' && !declared.count(w))
            add(w.substr(1));
        else
            add(w);
    }
    return out;
}

std::vector<std::string> split_list(const std::vector<std::string> &items) {
    std::vector<std::string> out;
    for (auto &s : items) {
        std::size_t p = 0;
        while (p <= s.size()) {
            auto q = s.find(',', p);
            if (q == std::string::npos)
                q = s.size();
            if (q > p)
                out.push_back(s.substr(p, q - p));
            p = q + 1;
        }
    }
    return out;
}

int cmd_simplify(const std::string &expr, const std::vector<std::string> &even_in,
                 const std::vector<std::string> &odd_in, const std::vector<std::string> &inv_in,
                 const Options &opt) {
    auto even = split_list(even_in), odd = split_list(odd_in), inv = split_list(inv_in);
    std::set<std::string> declared(even.begin(), even.end());
    declared.insert(odd.begin(), odd.end());
    declared.insert(inv.begin(), inv.end());
    std::set<std::string> inv_set(inv.begin(), inv.end()), odd_set(odd.begin(), odd.end());
    for (auto &n : inv)
        if (odd_set.count(n))
            throw std::invalid_argument("'" + n + "' cannot be odd and invertible");
    std::vector<std::string> evens;
    std::set<std::string> placed;
    auto place_even = [&](const std::string &n) {
        if (!odd_set.count(n) && placed.insert(n).second)
            evens.push_back(n);
    };
    for (auto &n : even)
        place_even(n);
    for (auto &n : inv)
        place_even(n);
    for (auto &n : scan_generators(expr, declared))
        place_even(n);
    std::vector<EvenGenerator> eg;
    for (auto &n : evens)
        eg.push_back({n, inv_set.count(n) > 0, false});
    std::vector<std::string> og;
    std::set<std::string> odd_seen;
    for (auto &n : odd)
        if (odd_seen.insert(n).second)
            og.push_back(n);
    auto chart = Chart::make("U", std::move(eg), std::move(og));
    Form f = parse_form(expr, chart);
    if (f.max_degree() > opt.max_degree)
        throw ParseError("form degree " + std::to_string(f.max_degree()) + " exceeds --max-degree " +
                             std::to_string(opt.max_degree),
                         1, 1);
    std::cout << f.to_string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact graded differential geometry: groups, bundles, connections"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--max-degree", opt.max_degree, "largest form degree accepted by simplify")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", opt.seed, "seed for the sampled-point regularity checks");
    app.add_option("--threads", opt.threads, "workers for the identity suite")->check(CLI::PositiveNumber);

    std::string file;
    auto add_file_cmd = [&](const char *name, const char *help) {
        auto sc = app.add_subcommand(name, help);
        sc->add_option("file", file, "model file or built-in group name")->required();
        return sc;
    };
    auto hopf = add_file_cmd("check-hopf", "validate the Hopf axioms of a group");
    auto lie = add_file_cmd("lie-algebra", "Lie superalgebra of primitives");
    auto mc = add_file_cmd("maurer-cartan", "Maurer-Cartan form and parallelizability");
    auto conn = add_file_cmd("connection", "connection form of a bundle model");
    auto curv = add_file_cmd("curvature", "curvature of a bundle model");
    auto ids = add_file_cmd("identities", "full identity suite of a bundle model");

    std::string expr;
    std::vector<std::string> even, odd, inv;
    auto simp = app.add_subcommand("simplify", "canonical form of an expression");
    simp->add_option("expr", expr, "expression")->required();
    simp->add_option("--even", even, "even generators (comma separated)");
    simp->add_option("--odd", odd, "odd generators");
    simp->add_option("--invertible", inv, "invertible even generators");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*hopf)
            return cmd_check_hopf(file);
        if (*lie)
            return cmd_lie_algebra(file);
        if (*mc)
            return cmd_maurer_cartan(file);
        if (*conn)
            return cmd_bundle(file, Stage::Connection, opt);
        if (*curv)
            return cmd_bundle(file, Stage::Curvature, opt);
        if (*ids)
            return cmd_bundle(file, Stage::Identities, opt);
        if (*simp)
            return cmd_simplify(expr, even, odd, inv, opt);
    } catch (const ParseError &e) {
        std::cerr << "error: " << (file.empty() ? std::string("<expr>") : file) << ":" << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
