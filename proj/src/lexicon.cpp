#include "lexidrift/lexicon.hpp"

#include <cmath>
#include <fstream>

namespace lexidrift {

size_t SeedLexicon::count(Polarity p) const {
    size_t n = 0;
    for (const auto& [word, entry] : entries)
        if (entry.polarity == p) ++n;
    return n;
}

SeedLexicon load_lexicon(const std::string& path, const LangDomainTag& tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open lexicon file: " + path);
    SeedLexicon lexicon;
    lexicon.tag = tag;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        std::vector<std::string> cols = split_char(line, '\t');
        if (cols.size() != 2 && cols.size() != 3)
            throw Error(where + ": expected `word<TAB>POS|NEG[<TAB>weight]`");
        if (cols[0].empty()) throw Error(where + ": empty word");
        SeedEntry entry;
        entry.polarity = polarity_from_string(cols[1]);
        if (cols.size() == 3) {
            entry.weight = parse_double(cols[2], where);
            if (!std::isfinite(entry.weight) || entry.weight <= 0.0)
                throw Error(where + ": weight must be finite and > 0");
        }
        auto [it, inserted] = lexicon.entries.emplace(cols[0], entry);
        if (!inserted) throw Error(where + ": duplicate word '" + cols[0] + "'");
    }
    return lexicon;
}

std::string lexicon_to_tsv(const SeedLexicon& lexicon) {
    std::string out;
    for (const auto& [word, entry] : lexicon.entries) {
        out += word;
        out += '\t';
        out += to_string(entry.polarity);
        out += '\t';
        out += fmt_g(entry.weight, 9);
        out += '\n';
    }
    return out;
}

void save_lexicon(const std::string& path, const SeedLexicon& lexicon) {
    write_text_file(path, lexicon_to_tsv(lexicon));
}

}  // namespace lexidrift
