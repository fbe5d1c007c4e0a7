#include "knotrep/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef KNOTREP_CORPUS_DIR
#define KNOTREP_CORPUS_DIR "data/corpus"
#endif

namespace knotrep {

using ojson = nlohmann::ordered_json;

Word::Word(std::vector<Letter> letters) {
    for (const auto& x : letters) {
        if (x.exp != 1 && x.exp != -1) throw std::invalid_argument("letter exponent must be +1 or -1");
        if (!l_.empty() && l_.back().gen == x.gen && l_.back().exp == -x.exp) {
            l_.pop_back();
        } else {
            l_.push_back(x);
        }
    }
}

Word Word::inverse() const {
    std::vector<Letter> r(l_.rbegin(), l_.rend());
    for (auto& x : r) x.exp = -x.exp;
    Word w;
    w.l_ = std::move(r);
    return w;
}

Word Word::cyclically_reduced() const {
    std::size_t b = 0, e = l_.size();
    while (e - b >= 2 && l_[b].gen == l_[e - 1].gen && l_[b].exp == -l_[e - 1].exp) {
        ++b;
        --e;
    }
    Word w;
    w.l_.assign(l_.begin() + static_cast<std::ptrdiff_t>(b), l_.begin() + static_cast<std::ptrdiff_t>(e));
    return w;
}

Word Word::rotated(std::size_t k) const {
    if (l_.empty()) return *this;
    k %= l_.size();
    std::vector<Letter> r(l_.begin() + static_cast<std::ptrdiff_t>(k), l_.end());
    r.insert(r.end(), l_.begin(), l_.begin() + static_cast<std::ptrdiff_t>(k));
    return Word(std::move(r));
}

Word Word::prefix(std::size_t k) const {
    Word w;
    w.l_.assign(l_.begin(), l_.begin() + static_cast<std::ptrdiff_t>(std::min(k, l_.size())));
    return w;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> r = a.l_;
    r.insert(r.end(), b.l_.begin(), b.l_.end());
    return Word(std::move(r));
}

Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

long Presentation::degree(const Word& w) const {
    long d = 0;
    for (const auto& x : w.letters()) d += x.exp * h.at(static_cast<std::size_t>(x.gen));
    return d;
}

namespace {

std::string inverse_name(const std::string& g) {
    std::string s = g;
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

bool valid_generator_name(const std::string& g) {
    if (g.empty() || !std::islower(static_cast<unsigned char>(g[0]))) return false;
    return std::all_of(g.begin(), g.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

std::string Presentation::word_string(const Word& w) const {
    std::string s;
    for (const auto& x : w.letters()) {
        if (!s.empty()) s += ' ';
        const auto& g = generators.at(static_cast<std::size_t>(x.gen));
        s += x.exp > 0 ? g : inverse_name(g);
    }
    return s;
}

Word Presentation::parse_word(const std::string& s) const {
    std::istringstream is(s);
    std::string tok;
    std::vector<Letter> out;
    while (is >> tok) {
        int found = -1, exp = 1;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i] == tok) {
                found = static_cast<int>(i);
                exp = 1;
                break;
            }
            if (inverse_name(generators[i]) == tok) {
                found = static_cast<int>(i);
                exp = -1;
                break;
            }
        }
        if (found < 0) throw std::invalid_argument("unknown generator '" + tok + "'");
        out.push_back({found, exp});
    }
    return Word(std::move(out));
}

void validate(Presentation& p) {
    const std::size_t g = p.generators.size();
    if (g == 0) throw std::invalid_argument("presentation has no generators");
    std::set<std::string> seen;
    for (const auto& name : p.generators) {
        if (!valid_generator_name(name))
            throw std::invalid_argument("generator name '" + name + "' must start with a lower-case letter");
        if (!seen.insert(name).second) throw std::invalid_argument("duplicate generator '" + name + "'");
        if (name != inverse_name(name) && seen.count(inverse_name(name)))
            throw std::invalid_argument("generator '" + name + "' clashes with an inverse letter");
    }
    if (p.meridian < 0 || static_cast<std::size_t>(p.meridian) >= g) throw std::invalid_argument("meridian out of range");
    if (p.h.empty()) p.h.assign(g, 1);
    if (p.h.size() != g) throw std::invalid_argument("degree map has wrong length");
    if (!p.h_explicit && p.relators.size() + 1 != g) {
        if (p.relators.empty()) throw std::invalid_argument("empty relator set");
        throw std::invalid_argument("Wirtinger presentation needs " + std::to_string(g - 1) + " relators, got " +
                                    std::to_string(p.relators.size()));
    }
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        const Word& w = p.relators[r];
        for (const auto& x : w.letters())
            if (x.gen < 0 || static_cast<std::size_t>(x.gen) >= g) throw std::invalid_argument("relator letter out of range");
        if (w.empty()) throw std::invalid_argument("relator " + std::to_string(r) + " is empty after free reduction");
        const long d = p.degree(w);
        if (d != 0)
            throw std::invalid_argument("h is inconsistent on relator " + std::to_string(r) + " (degree " +
                                        std::to_string(d) + ")");
        const Word c = w.cyclically_reduced();
        if (c.size() <= 2)
            p.warnings.push_back("relator " + std::to_string(r) + " cyclically reduces to '" + p.word_string(c) +
                                 "' and kills or identifies generators");
    }
}

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Best-effort location of a JSON string value in the source text.
std::pair<int, int> locate(const std::string& text, const std::string& needle) {
    const auto pos = text.find(ojson(needle).dump());
    if (pos == std::string::npos) return {0, 0};
    return line_col(text, pos);
}

[[noreturn]] void fail_at(const std::string& text, const std::string& needle, const std::string& msg) {
    auto [l, c] = locate(text, needle);
    throw ParseError(msg, l, c);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        const auto k = what.find("syntax error");
        throw ParseError(k == std::string::npos ? what : what.substr(k), l, c);
    }
    if (!j.is_object()) throw ParseError("presentation must be a JSON object", 1, 1);
    for (const char* key : {"name", "generators", "relators", "meridian"})
        if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 1, 1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = it.key();
        if (k != "name" && k != "generators" && k != "relators" && k != "meridian" && k != "h")
            fail_at(text, k, "unknown field '" + k + "'");
    }
    Presentation p;
    try {
        p.name = j.at("name").get<std::string>();
        p.generators = j.at("generators").get<std::vector<std::string>>();
    } catch (const ojson::exception&) {
        throw ParseError("'name' must be a string and 'generators' a list of strings", 1, 1);
    }
    if (!j.at("relators").is_array()) fail_at(text, "relators", "'relators' must be a list of strings");
    for (const auto& r : j.at("relators")) {
        if (!r.is_string()) fail_at(text, "relators", "relator must be a string");
        const auto s = r.get<std::string>();
        try {
            p.relators.push_back(p.parse_word(s));
        } catch (const std::invalid_argument& e) {
            fail_at(text, s, e.what());
        }
    }
    if (!j.at("meridian").is_string()) fail_at(text, "meridian", "'meridian' must be a generator name");
    const auto m = j.at("meridian").get<std::string>();
    auto it = std::find(p.generators.begin(), p.generators.end(), m);
    if (it == p.generators.end()) fail_at(text, m, "unknown meridian '" + m + "'");
    p.meridian = static_cast<int>(it - p.generators.begin());
    if (j.contains("h")) {
        const auto& hj = j.at("h");
        if (!hj.is_object()) fail_at(text, "h", "'h' must map generator names to integers");
        p.h.assign(p.generators.size(), 0);
        std::vector<bool> given(p.generators.size(), false);
        for (auto e = hj.begin(); e != hj.end(); ++e) {
            auto g = std::find(p.generators.begin(), p.generators.end(), e.key());
            if (g == p.generators.end()) fail_at(text, e.key(), "unknown generator '" + e.key() + "' in h");
            if (!e.value().is_number_integer()) fail_at(text, e.key(), "h value must be an integer");
            const auto idx = static_cast<std::size_t>(g - p.generators.begin());
            p.h[idx] = e.value().get<long>();
            given[idx] = true;
        }
        for (std::size_t i = 0; i < given.size(); ++i)
            if (!given[i]) fail_at(text, "h", "h is missing generator '" + p.generators[i] + "'");
        p.h_explicit = true;
    }
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        fail_at(text, "relators", e.what());
    }
    return p;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string serialize_presentation(const Presentation& p) {
    ojson j;
    j["name"] = p.name;
    j["generators"] = p.generators;
    ojson rel = ojson::array();
    for (const auto& w : p.relators) rel.push_back(p.word_string(w));
    j["relators"] = rel;
    j["meridian"] = p.generators.at(static_cast<std::size_t>(p.meridian));
    if (p.h_explicit) {
        ojson h = ojson::object();
        for (std::size_t i = 0; i < p.generators.size(); ++i) h[p.generators[i]] = p.h[i];
        j["h"] = h;
    }
    return j.dump(2) + "\n";
}

Presentation presentation_from_braid(const std::vector<int>& braid, std::size_t strands, std::string name) {
    std::size_t k = strands;
    for (int s : braid) {
        if (s == 0) throw std::invalid_argument("braid generator index 0");
        k = std::max(k, static_cast<std::size_t>(std::abs(s)) + 1);
    }
    if (k == 0) k = 1;
    if (k > 26) throw std::invalid_argument("at most 26 strands supported");
    // permutation check: the closure is a knot iff the strands form one cycle
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (int s : braid) {
        const auto i = static_cast<std::size_t>(std::abs(s)) - 1;
        std::swap(perm[i], perm[i + 1]);
    }
    std::size_t len = 0, cur = 0;
    do {
        cur = perm[cur];
        ++len;
    } while (cur != 0);
    if (len != k) throw std::invalid_argument("braid closure has more than one component");

    std::vector<Word> img;
    for (std::size_t i = 0; i < k; ++i) img.push_back(Word::generator(static_cast<int>(i)));
    for (int s : braid) {
        const auto i = static_cast<std::size_t>(std::abs(s)) - 1;
        Word a = img[i], b = img[i + 1];
        if (s > 0) {
            img[i] = a * b * a.inverse();
            img[i + 1] = a;
        } else {
            img[i] = b;
            img[i + 1] = b.inverse() * a * b;
        }
    }
    Presentation p;
    p.name = std::move(name);
    for (std::size_t i = 0; i < k; ++i) p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t i = 0; i + 1 < k; ++i) p.relators.push_back(Word::generator(static_cast<int>(i), -1) * img[i]);
    // trivial relators (from strands the braid never touches) cannot occur for a knot with k > 1
    p.meridian = 0;
    validate(p);
    return p;
}

std::vector<int> parse_braid(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == '{' || c == '}' || c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream is(s);
    std::vector<int> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad braid letter '" + tok + "'");
        }
        if (used != tok.size() || v == 0) throw std::invalid_argument("bad braid letter '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::string corpus_dir() {
    if (const char* e = std::getenv("KNOTREP_CORPUS")) return e;
    return KNOTREP_CORPUS_DIR;
}

std::vector<std::string> corpus_names() {
    std::ifstream in(corpus_dir() + "/golden.json");
    if (!in) throw std::runtime_error("corpus index not found in " + corpus_dir());
    ojson j = ojson::parse(in);
    std::vector<std::string> out;
    for (auto it = j.at("knots").begin(); it != j.at("knots").end(); ++it) out.push_back(it.key());
    return out;
}

Presentation corpus_entry(const std::string& name) { return load_presentation(corpus_dir() + "/" + name + ".json"); }

Word random_word(std::mt19937_64& rng, int num_generators, double mean_length) {
    std::geometric_distribution<int> len(1.0 / (mean_length + 1.0));
    std::uniform_int_distribution<int> letter(0, 2 * num_generators - 1);
    const int n = len(rng);
    std::vector<Letter> l;
    l.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int x = letter(rng);
        l.push_back({x / 2, x % 2 ? -1 : 1});
    }
    return Word(std::move(l));
}

}  // namespace knotrep
