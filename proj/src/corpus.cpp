#include "lexidrift/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include "lexidrift/utf8.hpp"

namespace lexidrift {

namespace {

std::string normalize_token(const std::string& raw, const TokenizationPolicy& policy) {
    std::vector<char32_t> cps = utf8::decode(raw);
    if (policy.lowercase)
        for (char32_t& cp : cps) cp = utf8::to_lower(cp);
    size_t begin = 0, end = cps.size();
    if (policy.strip_punctuation) {
        while (begin < end && utf8::is_punctuation(cps[begin])) ++begin;
        while (end > begin && utf8::is_punctuation(cps[end - 1])) --end;
    }
    if (end - begin < policy.min_token_length) return {};
    std::string out;
    for (size_t i = begin; i < end; ++i) utf8::append(out, cps[i]);
    return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizationPolicy& policy) {
    std::vector<std::string> out;
    for (const std::string& raw : split_whitespace(text)) {
        std::string tok = normalize_token(raw, policy);
        if (!tok.empty()) out.push_back(std::move(tok));
    }
    return out;
}

ParallelCorpus load_parallel_corpus(const std::string& path,
                                    const LangDomainTag& source_tag,
                                    const LangDomainTag& target_tag,
                                    const TokenizationPolicy& policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus file: " + path);

    ParallelCorpus corpus;
    corpus.source_tag = source_tag;
    corpus.target_tag = target_tag;
    corpus.policy = policy;

    std::unordered_set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols = split_char(line, '\t');
        if (cols.size() != 3)
            throw Error(path + ":" + std::to_string(line_no) + ": expected 3 tab-separated columns, got " +
                        std::to_string(cols.size()));
        if (cols[0].empty())
            throw Error(path + ":" + std::to_string(line_no) + ": empty verse_id");
        if (!seen_ids.insert(cols[0]).second)
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate verse_id '" + cols[0] + "'");

        VersePair pair;
        pair.verse_id = cols[0];
        pair.source_tokens = tokenize(cols[1], policy);
        pair.target_tokens = tokenize(cols[2], policy);
        if (pair.source_tokens.empty() || pair.target_tokens.empty()) {
            ++corpus.dropped_pairs;
            continue;
        }
        corpus.pairs.push_back(std::move(pair));
    }
    if (line_no == 0) throw Error("empty corpus file: " + path);
    if (corpus.pairs.empty())
        throw Error("corpus file yields no usable verse pairs: " + path);
    return corpus;
}

Vocabulary build_vocab(const ParallelCorpus& corpus, CorpusSide side) {
    Vocabulary vocab;
    vocab.tag = side == CorpusSide::Source ? corpus.source_tag : corpus.target_tag;
    for (const VersePair& pair : corpus.pairs) {
        const auto& tokens = side == CorpusSide::Source ? pair.source_tokens : pair.target_tokens;
        for (const std::string& tok : tokens) {
            ++vocab.entries[tok];
            ++vocab.total_tokens;
        }
    }
    return vocab;
}

void save_vocab(const std::string& path, const Vocabulary& vocab) {
    std::map<std::string, uint64_t> sorted(vocab.entries.begin(), vocab.entries.end());
    std::string out;
    for (const auto& [word, count] : sorted) {
        out += word;
        out += '\t';
        out += std::to_string(count);
        out += '\n';
    }
    write_text_file(path, out);
}

Vocabulary load_vocab(const std::string& path, const LangDomainTag& tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open vocabulary file: " + path);
    Vocabulary vocab;
    vocab.tag = tag;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols = split_char(line, '\t');
        if (cols.size() != 2)
            throw Error(path + ":" + std::to_string(line_no) + ": expected `word<TAB>count`");
        int64_t count = parse_int(cols[1], path + ":" + std::to_string(line_no));
        if (count < 1)
            throw Error(path + ":" + std::to_string(line_no) + ": count must be >= 1");
        auto [it, inserted] = vocab.entries.emplace(cols[0], static_cast<uint64_t>(count));
        if (!inserted)
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate word '" + cols[0] + "'");
        vocab.total_tokens += static_cast<uint64_t>(count);
    }
    return vocab;
}

}  // namespace lexidrift
