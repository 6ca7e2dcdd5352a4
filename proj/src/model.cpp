#include "sgeom/model.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace sgeom {

namespace {

struct Word {
    std::string text;
    int column;
};

struct Entry {
    int line;
    std::vector<Word> words; // chart-style entries
    std::string lhs;
    int lhs_column = 0;
    std::string rhs;
    int rhs_column = 0;
    bool assignment = false;
};

struct Section {
    std::string keyword;
    std::vector<Word> args;
    int line;
    std::vector<Entry> entries;
};

const std::set<std::string> kKeywords = {"group", "chart", "coproduct", "counit", "antipode",
                                         "identity", "basis", "base", "beta", "gauge"};

std::vector<Word> split_words(const std::string &s, int col0) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        if (i >= s.size())
            break;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        out.push_back({s.substr(i, j - i), col0 + static_cast<int>(i)});
        i = j;
    }
    return out;
}

std::string rstrip(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    return s;
}

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = rstrip(raw.substr(0, hash));
        auto words = split_words(s, 1);
        if (words.empty())
            continue;
        auto eq = s.find('=');
        if (eq == std::string::npos && kKeywords.count(words[0].text)) {
            out.push_back({words[0].text, {words.begin() + 1, words.end()}, line, {}});
            continue;
        }
        if (out.empty())
            throw ParseError("expected a section keyword, got '" + words[0].text + "'", line, words[0].column);
        Entry e;
        e.line = line;
        if (eq != std::string::npos) {
            e.assignment = true;
            auto lw = split_words(s.substr(0, eq), 1);
            if (lw.size() != 1)
                throw ParseError("expected 'name = expression'", line, lw.empty() ? 1 : words[0].column);
            e.lhs = lw[0].text;
            e.lhs_column = lw[0].column;
            std::size_t r = eq + 1;
            e.rhs = s.substr(r);
            e.rhs_column = static_cast<int>(r) + 1;
            if (split_words(e.rhs, 1).empty())
                throw ParseError("missing expression after '='", line, e.rhs_column);
        } else {
            e.words = std::move(words);
        }
        out.back().entries.push_back(std::move(e));
    }
    return out;
}

ChartPtr parse_chart(const Section &sec, const std::string &name) {
    std::vector<EvenGenerator> even;
    std::vector<std::string> odd;
    std::set<std::string> seen;
    for (auto &e : sec.entries) {
        if (e.assignment)
            throw ParseError("expected 'even NAME [invertible]' or 'odd NAME'", e.line, e.lhs_column);
        const auto &w = e.words;
        if (w[0].text != "even" && w[0].text != "odd")
            throw ParseError("expected 'even' or 'odd', got '" + w[0].text + "'", e.line, w[0].column);
        if (w.size() < 2)
            throw ParseError("missing generator name", e.line, w[0].column);
        const auto &n = w[1].text;
        bool ok = std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_';
        for (char ch : n)
            ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
        if (!ok)
            throw ParseError("invalid generator name '" + n + "'", e.line, w[1].column);
        if (!seen.insert(n).second)
            throw ParseError("duplicate generator '" + n + "'", e.line, w[1].column);
        bool inv = false;
        for (std::size_t k = 2; k < w.size(); ++k) {
            if (w[0].text == "even" && w[k].text == "invertible" && !inv)
                inv = true;
            else
                throw ParseError("unexpected '" + w[k].text + "'", e.line, w[k].column);
        }
        if (w[0].text == "even")
            even.push_back({n, inv, false});
        else
            odd.push_back(n);
    }
    if (even.empty() && odd.empty())
        throw ParseError("chart has no generators", sec.line, 1);
    return Chart::make(name, std::move(even), std::move(odd));
}

Rational parse_rational(const std::string &text, int line, int column) {
    auto w = split_words(text, column);
    if (w.size() != 1)
        throw ParseError("expected a rational number", line, column);
    try {
        Rational q(w[0].text);
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument &) {
        throw ParseError("invalid rational '" + w[0].text + "'", line, w[0].column);
    }
}

std::size_t generator_of(const ChartPtr &c, const Entry &e) {
    auto g = c->find(e.lhs);
    if (!g)
        throw ParseError("unknown generator '" + e.lhs + "'", e.line, e.lhs_column);
    return *g;
}

// gen -> entry, every generator once
std::vector<const Entry *> per_generator(const ChartPtr &c, const Section &sec, bool even_only = false) {
    std::vector<const Entry *> out(c->size(), nullptr);
    for (auto &e : sec.entries) {
        if (!e.assignment)
            throw ParseError("expected 'name = expression'", e.line, e.words[0].column);
        auto g = generator_of(c, e);
        if (out[g])
            throw ParseError("duplicate entry for '" + e.lhs + "'", e.line, e.lhs_column);
        if (even_only && c->is_odd(g))
            throw ParseError("odd generator '" + e.lhs + "' has no value here", e.line, e.lhs_column);
        out[g] = &e;
    }
    return out;
}

const Section *find_section(const std::vector<Section> &secs, const std::string &kw) {
    const Section *hit = nullptr;
    for (auto &s : secs)
        if (s.keyword == kw) {
            if (hit)
                throw ParseError("duplicate section '" + kw + "'", s.line, 1);
            hit = &s;
        }
    return hit;
}

const Section &require_section(const std::vector<Section> &secs, const std::string &kw, int line) {
    auto s = find_section(secs, kw);
    if (!s)
        throw ParseError("missing section '" + kw + "'", line, 1);
    return *s;
}

void no_args(const Section &s) {
    if (!s.args.empty())
        throw ParseError("section '" + s.keyword + "' takes no arguments", s.line, s.args[0].column);
}

GroupPtr build_group(const std::vector<Section> &secs, std::string name, int end_line) {
    const auto &cs = require_section(secs, "chart", end_line);
    no_args(cs);
    auto chart = parse_chart(cs, "G");
    TensorProduct pair({chart, chart});

    const auto &dsec = require_section(secs, "coproduct", end_line);
    no_args(dsec);
    auto de = per_generator(chart, dsec);
    std::vector<SuperElement> delta;
    for (std::size_t g = 0; g < chart->size(); ++g) {
        if (!de[g])
            throw ParseError("coproduct of '" + chart->generator_name(g) + "' missing", dsec.line, 1);
        delta.push_back(parse_element(de[g]->rhs, pair.chart(), de[g]->line, de[g]->rhs_column));
    }

    std::vector<Rational> counit(chart->even_count());
    if (chart->even_count()) {
        const auto &es = require_section(secs, "counit", end_line);
        no_args(es);
        auto ee = per_generator(chart, es, true);
        for (std::size_t i = 0; i < chart->even_count(); ++i) {
            if (!ee[i])
                throw ParseError("counit of '" + chart->generator_name(i) + "' missing", es.line, 1);
            counit[i] = parse_rational(ee[i]->rhs, ee[i]->line, ee[i]->rhs_column);
        }
    } else if (auto es = find_section(secs, "counit")) {
        per_generator(chart, *es, true);
    }

    const auto &ss = require_section(secs, "antipode", end_line);
    no_args(ss);
    auto se = per_generator(chart, ss);
    std::vector<SuperElement> antipode;
    for (std::size_t g = 0; g < chart->size(); ++g) {
        if (!se[g])
            throw ParseError("antipode of '" + chart->generator_name(g) + "' missing", ss.line, 1);
        antipode.push_back(parse_element(se[g]->rhs, chart, se[g]->line, se[g]->rhs_column));
    }

    std::vector<Rational> identity = counit;
    if (auto is = find_section(secs, "identity")) {
        no_args(*is);
        auto ie = per_generator(chart, *is, true);
        for (std::size_t i = 0; i < chart->even_count(); ++i)
            if (ie[i])
                identity[i] = parse_rational(ie[i]->rhs, ie[i]->line, ie[i]->rhs_column);
    }

    std::vector<std::string> basis;
    if (auto bs = find_section(secs, "basis")) {
        if (!bs->entries.empty())
            throw ParseError("basis names go on the header line", bs->entries[0].line, 1);
        if (bs->args.size() != chart->size())
            throw ParseError("basis: expected " + std::to_string(chart->size()) + " names", bs->line, 1);
        std::set<std::string> seen;
        for (auto &w : bs->args) {
            if (!seen.insert(w.text).second)
                throw ParseError("duplicate basis name '" + w.text + "'", bs->line, w.column);
            basis.push_back(w.text);
        }
    }
    try {
        return HopfGroup::make(std::move(name), chart, std::move(delta), std::move(counit), std::move(antipode),
                               std::move(identity), std::move(basis));
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what(), end_line, 1);
    }
}

int last_line(std::string_view text) {
    int n = 1;
    for (char c : text)
        n += c == '\n';
    return n;
}

const std::set<std::string> kGroupSections = {"chart", "coproduct", "counit", "antipode", "identity", "basis"};

} // namespace

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ModelError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GroupPtr parse_group_model(std::string_view text, const std::string &default_name) {
    auto secs = split_sections(text);
    std::string name = default_name;
    for (auto &s : secs) {
        if (s.keyword == "group") {
            if (s.args.size() != 1)
                throw ParseError("expected 'group NAME'", s.line, 1);
            if (!s.entries.empty())
                throw ParseError("unexpected entry", s.entries[0].line, 1);
            name = s.args[0].text;
        } else if (!kGroupSections.count(s.keyword)) {
            throw ParseError("section '" + s.keyword + "' not allowed in a group file", s.line, 1);
        }
    }
    find_section(secs, "group");
    return build_group(secs, name, last_line(text));
}

GroupPtr load_group(const std::string &name_or_path, const std::filesystem::path &dir) {
    if (name_or_path.find('/') == std::string::npos && name_or_path.find('.') == std::string::npos) {
        try {
            if (auto g = builtin_group(name_or_path))
                return g;
        } catch (const std::invalid_argument &) {
        }
    }
    std::filesystem::path p(name_or_path);
    if (p.is_relative() && !dir.empty() && !std::filesystem::exists(p))
        p = dir / p;
    if (!std::filesystem::exists(p))
        throw ModelError("unknown group '" + name_or_path + "'");
    return parse_group_model(read_file(p), p.stem().string());
}

BundleModel parse_bundle_model(std::string_view text, const std::string &name, const std::filesystem::path &dir,
                               std::uint64_t seed) {
    auto secs = split_sections(text);
    const int end = last_line(text);
    std::vector<Section> inline_group;
    const Section *gsec = nullptr;
    for (auto &s : secs) {
        if (s.keyword == "group") {
            if (gsec)
                throw ParseError("duplicate section 'group'", s.line, 1);
            gsec = &s;
            if (s.args.size() > 1)
                throw ParseError("expected 'group NAME' or 'group' before inline sections", s.line, s.args[1].column);
            if (!s.entries.empty())
                throw ParseError("unexpected entry", s.entries[0].line, 1);
        } else if (kGroupSections.count(s.keyword)) {
            if (!gsec || !gsec->args.empty())
                throw ParseError("section '" + s.keyword + "' needs a preceding bare 'group' line", s.line, 1);
            inline_group.push_back(s);
        } else if (s.keyword != "base" && s.keyword != "beta" && s.keyword != "gauge") {
            throw ParseError("section '" + s.keyword + "' not allowed in a bundle file", s.line, 1);
        }
    }
    if (!gsec)
        throw ParseError("missing section 'group'", end, 1);
    GroupPtr group;
    if (gsec->args.empty()) {
        group = build_group(inline_group, name + "-group", end);
    } else {
        try {
            group = load_group(gsec->args[0].text, dir);
        } catch (const ModelError &e) {
            throw ParseError(e.what(), gsec->line, gsec->args[0].column);
        }
    }

    const auto &bs = require_section(secs, "base", end);
    no_args(bs);
    auto base = parse_chart(bs, "X");

    BundleModel m;
    m.name = name;
    m.bundle = Bundle::build(base, group, seed);
    const auto &lie = *m.bundle->algebra();
    std::vector<Form> comps(lie.dim(), Form(base));
    if (auto be = find_section(secs, "beta")) {
        no_args(*be);
        std::set<std::string> seen;
        for (auto &e : be->entries) {
            if (!e.assignment)
                throw ParseError("expected 'BASIS = form'", e.line, e.words[0].column);
            std::size_t k = 0;
            while (k < lie.dim() && lie.name(k) != e.lhs)
                ++k;
            if (k == lie.dim())
                throw ParseError("unknown basis element '" + e.lhs + "'", e.line, e.lhs_column);
            if (!seen.insert(e.lhs).second)
                throw ParseError("duplicate entry for '" + e.lhs + "'", e.line, e.lhs_column);
            comps[k] = parse_form(e.rhs, base, e.line, e.rhs_column);
            if (!comps[k].is_zero() && !comps[k].is_degree(1))
                throw ParseError("beta component must be a 1-form", e.line, e.rhs_column);
            Parity want = lie.parity(k) ? Parity::Odd : Parity::Even;
            if (!comps[k].is_zero() && comps[k].parity() != want)
                throw ParseError("beta component " + e.lhs + " must be " + parity_name(want), e.line, e.rhs_column);
        }
    }
    m.beta = GForm(m.bundle->algebra(), base, std::move(comps));

    if (auto gs = find_section(secs, "gauge")) {
        no_args(*gs);
        const auto &gc = group->chart();
        auto ge = per_generator(gc, *gs);
        std::vector<SuperElement> imgs;
        for (std::size_t g = 0; g < gc->size(); ++g) {
            if (!ge[g])
                throw ParseError("gauge image of '" + gc->generator_name(g) + "' missing", gs->line, 1);
            imgs.push_back(parse_element(ge[g]->rhs, base, ge[g]->line, ge[g]->rhs_column));
        }
        try {
            m.gauge = AlgebraMorphism(gc, base, std::move(imgs));
        } catch (const std::exception &e) {
            throw ParseError(std::string("gauge: ") + e.what(), gs->line, 1);
        }
    }
    return m;
}

BundleModel load_bundle(const std::string &path, std::uint64_t seed) {
    std::filesystem::path p(path);
    return parse_bundle_model(read_file(p), p.stem().string(), p.parent_path(), seed);
}

} // namespace sgeom
