// Converts a braid word to a presentation file.
//   braid2json 6_1 "{1,1,2,-1,-3,2,-3}" > data/corpus/6_1.json

#include <iostream>

#include "CLI11.hpp"
#include "knotrep/presentation.hpp"

int main(int argc, char** argv) {
    CLI::App app{"braid word to presentation JSON"};
    std::string name, braid;
    std::size_t strands = 0;
    app.add_option("name", name, "knot name")->required();
    app.add_option("braid", braid, "signed generator indices, e.g. \"1 1 -2\"")->required();
    app.add_option("--strands", strands, "number of strands (default: max index + 1)");
    CLI11_PARSE(app, argc, argv);
    try {
        auto p = knotrep::presentation_from_braid(knotrep::parse_braid(braid), strands, name);
        for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << knotrep::serialize_presentation(p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
