#pragma once

// Finite group presentations with a distinguished meridian and degree map.

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotrep {

struct Letter {
    int gen = 0;
    int exp = 1;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);  // freely reduces
    static Word generator(int g, int exp = 1) { return Word({Letter{g, exp}}); }

    const std::vector<Letter>& letters() const { return l_; }
    std::size_t size() const { return l_.size(); }
    bool empty() const { return l_.empty(); }

    Word inverse() const;
    Word cyclically_reduced() const;
    Word rotated(std::size_t k) const;  // cyclic permutation starting at letter k
    Word prefix(std::size_t k) const;
    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> l_;
};

Word commutator(const Word& a, const Word& b);  // a b a^-1 b^-1

struct Presentation {
    std::string name;
    std::vector<std::string> generators;
    std::vector<Word> relators;
    int meridian = 0;
    std::vector<long> h;       // degree of each generator
    bool h_explicit = false;   // h came from the file rather than the Wirtinger default
    std::vector<std::string> warnings;

    std::size_t num_generators() const { return generators.size(); }
    long degree(const Word& w) const;
    std::string word_string(const Word& w) const;
    // Parses space separated letters; an upper-case first character inverts.
    Word parse_word(const std::string& s) const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// JSON: {"name", "generators", "relators", "meridian", "h" (optional)}.
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
// Canonical JSON text; parse(serialize(p)) reproduces p.
std::string serialize_presentation(const Presentation& p);

// Checks letters, h on relators and the Wirtinger relator count; throws
// std::invalid_argument. Appends warnings for degenerate relators.
void validate(Presentation& p);

// Braid word in sigma_i^{+-1} written as signed 1-based indices.
// strands = 0 means max |i| + 1.
Presentation presentation_from_braid(const std::vector<int>& braid, std::size_t strands = 0, std::string name = "");
std::vector<int> parse_braid(const std::string& text);  // "1 1 -2" or "{1,1,-2}"

// Directory holding the shipped corpus; KNOTREP_CORPUS overrides.
std::string corpus_dir();
std::vector<std::string> corpus_names();
Presentation corpus_entry(const std::string& name);

// Uniform letters, length geometric with mean `mean_length`.
Word random_word(std::mt19937_64& rng, int num_generators, double mean_length = 12.0);

}  // namespace knotrep
