#include "gbsn/io.hpp"

#include "gbsn/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace gbsn {

using json = nlohmann::ordered_json;

namespace {

/* Cursor over a matrix literal; positions only matter for error text. */
struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw parse_error(std::string("expected '") + c + "' in matrix literal");
    }
    Int integer() {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw parse_error("expected integer in matrix literal");
        return Int(s.substr(start, pos - start));
    }
};

} // namespace

IntMatrix parse_matrix_literal(const std::string& text) {
    Cursor c{text};
    c.expect('[');
    std::vector<std::vector<Int>> rows;
    do {
        c.expect('[');
        std::vector<Int> row;
        do {
            row.push_back(c.integer());
        } while (c.eat(','));
        c.expect(']');
        if (!rows.empty() && rows.front().size() != row.size())
            throw parse_error("ragged rows in matrix literal");
        rows.push_back(std::move(row));
    } while (c.eat(','));
    c.expect(']');
    if (c.pos != text.size()) throw parse_error("trailing characters after matrix literal");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(std::move(t));
    return out;
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char ch : id)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-' && ch != '.')
            return false;
    return true;
}

/* Value of a `key=value` token; throws with the offending line number. */
std::string keyed(const std::string& token, const std::string& key, int line) {
    std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0)
        throw parse_error("expected " + key + "=..., got '" + token + "'", line);
    return token.substr(prefix.size());
}

std::size_t parse_rank(const std::string& value, int line) {
    for (char ch : value)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw parse_error("rank must be a positive integer", line);
    unsigned long r;
    try {
        r = std::stoul(value);
    } catch (const std::exception&) {
        throw parse_error("rank out of range", line);
    }
    if (r == 0 || r > 64) throw parse_error("rank must be between 1 and 64", line);
    return r;
}

IntMatrix matrix_at(const std::string& value, int line) {
    try {
        return parse_matrix_literal(value);
    } catch (const parse_error& e) {
        throw parse_error(e.what(), line);
    }
}

} // namespace

GraphOfGroups parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    GraphOfGroups g;
    bool header_seen = false;
    bool hnn_form = false;

    while (std::getline(is, raw)) {
        ++line_no;
        auto tokens = tokenize(strip_comment(raw));
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens[0] == "gbs") {
                if (tokens.size() != 2)
                    throw parse_error("gbs header takes exactly rank=N", line_no);
                g.rank = parse_rank(keyed(tokens[1], "rank", line_no), line_no);
            } else if (tokens[0] == "hnn") {
                if (tokens.size() != 3)
                    throw parse_error("hnn header takes rank=N phi=MATRIX", line_no);
                g.rank = parse_rank(keyed(tokens[1], "rank", line_no), line_no);
                IntMatrix phi = matrix_at(keyed(tokens[2], "phi", line_no), line_no);
                g.vertices.push_back({"v0"});
                g.edges.push_back({"e1", "v0", "v0", IntMatrix::identity(g.rank), std::move(phi)});
                hnn_form = true;
            } else {
                throw parse_error("file must start with 'gbs rank=N' or 'hnn rank=N phi=M'", line_no);
            }
            header_seen = true;
            continue;
        }

        if (hnn_form) throw parse_error("hnn shorthand is a single line", line_no);

        if (tokens[0] == "vertex") {
            if (tokens.size() != 2) throw parse_error("vertex line takes one identifier", line_no);
            if (!valid_id(tokens[1]))
                throw parse_error("bad vertex identifier '" + tokens[1] + "'", line_no);
            g.vertices.push_back({tokens[1]});
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 6)
                throw parse_error("edge line takes: edge ID from=V to=W alpha=M omega=M", line_no);
            if (!valid_id(tokens[1]))
                throw parse_error("bad edge identifier '" + tokens[1] + "'", line_no);
            Edge e;
            e.id = tokens[1];
            e.from = keyed(tokens[2], "from", line_no);
            e.to = keyed(tokens[3], "to", line_no);
            e.alpha = matrix_at(keyed(tokens[4], "alpha", line_no), line_no);
            e.omega = matrix_at(keyed(tokens[5], "omega", line_no), line_no);
            g.edges.push_back(std::move(e));
        } else {
            throw parse_error("unknown directive '" + tokens[0] + "'", line_no);
        }
    }
    if (!header_seen) throw parse_error("empty input", line_no == 0 ? 1 : line_no);
    return g;
}

std::string render_graph(const GraphOfGroups& g) {
    std::ostringstream os;
    os << "gbs rank=" << g.rank << '\n';
    for (const Vertex& v : g.vertices) os << "vertex " << v.id << '\n';
    for (const Edge& e : g.edges)
        os << "edge " << e.id << " from=" << e.from << " to=" << e.to
           << " alpha=" << to_string(e.alpha) << " omega=" << to_string(e.omega) << '\n';
    return os.str();
}

AscendingHnn as_ascending_hnn(const GraphOfGroups& g) {
    if (g.vertices.size() != 1 || g.edges.size() != 1)
        throw precondition_error("ascending HNN form requires one vertex and one loop");
    const Edge& e = g.edges[0];
    if (!e.alpha.is_square() || e.alpha.rows() != g.rank || !e.alpha.is_identity())
        throw precondition_error("ascending HNN form requires alpha to be the identity");
    return AscendingHnn(e.omega);
}

namespace {

long parse_exponent(const std::string& s) {
    if (s.empty()) throw parse_error("empty exponent");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw parse_error("bad exponent '" + s + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error("bad exponent '" + s + "'");
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        throw parse_error("exponent out of range '" + s + "'");
    }
}

std::size_t parse_base_index(const std::string& name, std::size_t rank) {
    if (name == "a" && rank == 1) return 0;
    if (name.size() < 2 || name[0] != 'a')
        throw parse_error("unknown letter '" + name + "'");
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            throw parse_error("unknown letter '" + name + "'");
    unsigned long idx;
    try {
        idx = std::stoul(name.substr(1));
    } catch (const std::exception&) {
        throw parse_error("base letter index out of range in '" + name + "'");
    }
    if (idx == 0 || idx > rank)
        throw parse_error("letter '" + name + "' is outside a1..a" + std::to_string(rank));
    return idx - 1;
}

} // namespace

Word parse_word(const std::string& text, std::size_t rank) {
    std::vector<Letter> letters;
    for (const std::string& token : tokenize(text)) {
        if (token == "1") continue;
        std::string name = token;
        long exp = 1;
        auto caret = token.find('^');
        if (caret != std::string::npos) {
            name = token.substr(0, caret);
            exp = parse_exponent(token.substr(caret + 1));
        }
        if (name == "t") {
            if (exp != 0) letters.push_back(StableLetter{exp});
            continue;
        }
        std::size_t idx = parse_base_index(name, rank);
        if (exp == 0) continue;
        std::vector<Int> v(rank, 0);
        v[idx] = exp;
        letters.push_back(Syllable{std::move(v)});
    }
    return Word::from_letters(std::move(letters));
}

std::vector<Word> parse_word_list(const std::string& text, std::size_t rank) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    std::vector<Word> out;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        if (tokenize(line).empty()) continue;
        try {
            out.push_back(parse_word(line, rank));
        } catch (const parse_error& e) {
            throw parse_error(e.what(), line_no);
        }
    }
    return out;
}

namespace {

std::string base_letter(std::size_t i, std::size_t rank) {
    return rank == 1 ? "a" : "a" + std::to_string(i + 1);
}

} // namespace

std::string render_word(const Word& w, std::size_t rank) {
    std::ostringstream os;
    bool any = false;
    for (const Letter& l : w.letters()) {
        if (std::holds_alternative<StableLetter>(l)) {
            long e = std::get<StableLetter>(l).exp;
            if (any) os << ' ';
            os << 't';
            if (e != 1) os << '^' << e;
            any = true;
        } else {
            const auto& v = std::get<Syllable>(l).v;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                if (any) os << ' ';
                os << base_letter(i, rank);
                if (v[i] != 1) os << '^' << v[i].get_str();
                any = true;
            }
        }
    }
    return any ? os.str() : std::string("1");
}

std::string render_normal_form(const NormalForm& nf, std::size_t rank) {
    return render_word(nf_to_word(nf), rank);
}

GraphOfGroups builtin_example(const std::string& name) {
    if (name == "leary-minasyan") {
        GraphOfGroups g;
        g.rank = 2;
        g.vertices.push_back({"v0"});
        g.edges.push_back({"e1", "v0", "v0",
                           IntMatrix::of({{2, 1}, {-1, 2}}),
                           IntMatrix::of({{2, -1}, {1, 2}})});
        return g;
    }
    if (name.rfind("bs(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(3, name.size() - 4);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw parse_error("bs takes two arguments: bs(n,PHI)");
        std::size_t rank = parse_rank(inner.substr(0, comma), 0);
        IntMatrix phi = parse_matrix_literal(inner.substr(comma + 1));
        if (!phi.is_square() || phi.rows() != rank)
            throw parse_error("bs matrix must be " + std::to_string(rank) + "x" + std::to_string(rank));
        GraphOfGroups g;
        g.rank = rank;
        g.vertices.push_back({"v0"});
        g.edges.push_back({"e1", "v0", "v0", IntMatrix::identity(rank), std::move(phi)});
        return g;
    }
    throw parse_error("unknown example '" + name + "'; try one of: leary-minasyan, bs(n,PHI)");
}

std::vector<std::string> builtin_names() {
    return {"leary-minasyan", "bs(n,PHI)"};
}

namespace {

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json matrix_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json lattice_json(const Lattice& l) {
    return json{{"ambient", l.ambient_rank()}, {"rank", l.rank()}, {"basis", matrix_json(l.basis())}};
}

json verdict_node(const PropertyVerdict& v) {
    json j{{"property", v.property},
           {"answer", to_string(v.answer)},
           {"reason", v.reason},
           {"witness", nullptr}};
    if (v.witness) j["witness"] = lattice_json(*v.witness);
    return j;
}

json vector_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

json image_node(const QuotientImage& img) {
    json gi = json::array();
    for (const auto& e : img.generator_images) gi.push_back(to_string(e));
    return json{{"image_order", img.image_order.get_str()},
                {"index", img.index.get_str()},
                {"generator_images", std::move(gi)}};
}

json certificate_node(const Certificate& c) {
    json j;
    if (std::holds_alternative<HeightQuotient>(c.quotient)) {
        j["kind"] = "height";
        j["parameters"] = {{"modulus", std::get<HeightQuotient>(c.quotient).modulus.get_str()}};
    } else if (std::holds_alternative<LevelQuotientDesc>(c.quotient)) {
        const auto& d = std::get<LevelQuotientDesc>(c.quotient);
        j["kind"] = "level";
        j["parameters"] = {{"p", d.p.get_str()}, {"level", d.level}};
    } else {
        const auto& d = std::get<SemidirectQuotientDesc>(c.quotient);
        j["kind"] = "semidirect";
        j["parameters"] = {{"lattice", lattice_json(d.lattice)}};
    }
    j["generator_images"] = c.generator_images;
    j["image_order"] = c.image_order.get_str();
    j["group_order"] = c.group_order.get_str();
    j["index"] = c.index.get_str();
    j["reason"] = c.reason;
    return j;
}

} // namespace

std::string validation_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues)
        issues.push_back({{"category", i.category}, {"detail", i.detail}});
    return json{{"valid", r.ok()}, {"issues", std::move(issues)}}.dump(2);
}

std::string presentation_json(const Presentation& p) {
    return json{{"generators", p.generators}, {"relators", p.relators}}.dump(2);
}

std::string monodromy_json(const MonodromyReport& r) {
    json gens = json::array();
    for (const auto& g : r.generators)
        gens.push_back({{"edge", g.edge_id}, {"matrix", matrix_json(g.matrix)}});
    json cls;
    switch (r.classification.kind) {
        case Classification::Kind::Trivial:
            cls = {{"kind", "trivial"}, {"order", "1"}};
            break;
        case Classification::Kind::Finite:
            cls = {{"kind", "finite"}, {"order", r.classification.order.get_str()}};
            break;
        case Classification::Kind::Infinite:
            cls = {{"kind", "infinite"}};
            break;
        case Classification::Kind::Inconclusive:
            cls = {{"kind", "inconclusive"}, {"cap", r.classification.cap}};
            break;
    }
    return json{{"generators", std::move(gens)}, {"classification", std::move(cls)}}.dump(2);
}

std::string verdict_json(const PropertyVerdict& v) { return verdict_node(v).dump(2); }

std::string verdicts_json(const std::vector<PropertyVerdict>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(verdict_node(v));
    return a.dump(2);
}

std::string normal_form_json(const NormalForm& nf, std::size_t rank) {
    return json{{"neg", nf.neg},
                {"vector", vector_json(nf.a)},
                {"pos", nf.pos},
                {"word", render_normal_form(nf, rank)}}
        .dump(2);
}

std::string level_quotient_json(const LevelQuotient& lq,
                                const std::optional<QuotientImage>& image) {
    json j{{"p", lq.p.get_str()},
           {"level", lq.level},
           {"rank", lq.rank},
           {"modulus", lq.modulus.get_str()},
           {"matrix", matrix_json(lq.mat)},
           {"stable_order", lq.stable_order.get_str()},
           {"group_order", lq.group_order.get_str()},
           {"image", nullptr}};
    if (image) j["image"] = image_node(*image);
    return j.dump(2);
}

std::string certificate_json(const Certificate& c) { return certificate_node(c).dump(2); }

std::string search_result_json(const SearchResult& r) {
    json primes = json::array();
    for (const Int& p : r.budget.primes) primes.push_back(p.get_str());
    json j{{"certificate", nullptr},
           {"budget",
            {{"primes", std::move(primes)},
             {"max_level", r.budget.max_level},
             {"word_budget", r.budget.word_budget},
             {"enumeration_budget", r.budget.enumeration_budget.get_str()}}},
           {"log", r.log}};
    if (r.certificate) j["certificate"] = certificate_node(*r.certificate);
    return j.dump(2);
}

} // namespace gbsn
