#include "index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "errors.hpp"

namespace revrank {

namespace {

constexpr char kMagic[4] = {'R', 'V', 'I', 'X'};
constexpr uint8_t kVersion = 1;

void put_u32(std::ofstream& out, uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 4);
}

void put_u64(std::ofstream& out, uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 8);
}

void put_str(std::ofstream& out, const std::string& s) {
    put_u32(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t get_u32(std::ifstream& in, const std::string& path) {
    char buf[4];
    if (!in.read(buf, 4)) throw io_error("truncated index file: " + path);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

uint64_t get_u64(std::ifstream& in, const std::string& path) {
    char buf[8];
    if (!in.read(buf, 8)) throw io_error("truncated index file: " + path);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

std::string get_str(std::ifstream& in, const std::string& path) {
    uint32_t len = get_u32(in, path);
    std::string s(len, '\0');
    if (len > 0 && !in.read(s.data(), len)) throw io_error("truncated index file: " + path);
    return s;
}

void validate_params(const Bm25Params& params) {
    if (!(params.k1 > 0)) throw config_error("bm25 k1 must be > 0");
    if (!(params.b >= 0 && params.b <= 1)) throw config_error("bm25 b must be in [0,1]");
}

}  // namespace

const std::unordered_map<std::string, uint32_t>& InvertedIndex::id_lookup() const {
    if (id_to_pos_.size() != doc_ids.size()) {
        id_to_pos_.clear();
        id_to_pos_.reserve(doc_ids.size());
        for (uint32_t i = 0; i < doc_ids.size(); ++i) id_to_pos_.emplace(doc_ids[i], i);
    }
    return id_to_pos_;
}

InvertedIndex build_index(const std::vector<const Review*>& reviews) {
    InvertedIndex index;
    uint64_t total_len = 0;
    for (const Review* r : reviews) {
        if (r->score != 1) continue;
        uint32_t doc = static_cast<uint32_t>(index.doc_ids.size());
        index.doc_ids.push_back(r->id);
        index.doc_lens.push_back(r->tokens.size());
        total_len += r->tokens.size();
        std::map<std::string, uint32_t> tf;
        for (const std::string& t : r->tokens) ++tf[t];
        for (const auto& [term, count] : tf) index.postings[term].push_back({doc, count});
    }
    if (index.doc_ids.empty()) throw domain_error("no negative reviews to index");
    index.avg_doc_len = static_cast<double>(total_len) / static_cast<double>(index.doc_ids.size());
    return index;
}

void save_index(const std::string& path, const InvertedIndex& index) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw io_error("cannot write index file: " + path);
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u64(out, index.doc_ids.size());
    for (size_t i = 0; i < index.doc_ids.size(); ++i) {
        put_str(out, index.doc_ids[i]);
        put_u64(out, index.doc_lens[i]);
    }
    put_u64(out, index.postings.size());
    for (const auto& [term, postings] : index.postings) {
        put_str(out, term);
        put_u64(out, postings.size());
        for (const Posting& p : postings) {
            put_u32(out, p.doc);
            put_u32(out, p.tf);
        }
    }
    if (!out) throw io_error("write failure on index file: " + path);
}

InvertedIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open index file: " + path);
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic))
        throw io_error("not an index file (bad magic): " + path);
    int version = in.get();
    if (version != kVersion)
        throw io_error("unsupported index format version " + std::to_string(version) + ": " +
                       path);
    InvertedIndex index;
    uint64_t docs = get_u64(in, path);
    index.doc_ids.reserve(docs);
    index.doc_lens.reserve(docs);
    uint64_t total_len = 0;
    for (uint64_t i = 0; i < docs; ++i) {
        index.doc_ids.push_back(get_str(in, path));
        index.doc_lens.push_back(get_u64(in, path));
        total_len += index.doc_lens.back();
    }
    uint64_t terms = get_u64(in, path);
    for (uint64_t t = 0; t < terms; ++t) {
        std::string term = get_str(in, path);
        uint64_t n = get_u64(in, path);
        std::vector<Posting> postings;
        postings.reserve(n);
        for (uint64_t i = 0; i < n; ++i) {
            Posting p;
            p.doc = get_u32(in, path);
            p.tf = get_u32(in, path);
            if (p.doc >= docs) throw io_error("corrupt posting in index file: " + path);
            postings.push_back(p);
        }
        index.postings.emplace(std::move(term), std::move(postings));
    }
    if (docs == 0) throw io_error("index file holds no documents: " + path);
    index.avg_doc_len = static_cast<double>(total_len) / static_cast<double>(docs);
    return index;
}

double bm25_idf(uint64_t doc_count, uint64_t df) {
    double n = static_cast<double>(doc_count);
    double d = static_cast<double>(df);
    return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

namespace {

double term_weight(uint32_t tf, uint64_t doc_len, const InvertedIndex& index,
                   const Bm25Params& params, uint64_t df) {
    double tfd = static_cast<double>(tf);
    double norm = params.k1 * (1.0 - params.b +
                               params.b * static_cast<double>(doc_len) / index.avg_doc_len);
    return bm25_idf(index.doc_count(), df) * tfd * (params.k1 + 1.0) / (tfd + norm);
}

}  // namespace

double bm25_score(const std::vector<std::string>& query, const std::string& review_id,
                  const InvertedIndex& index, const Bm25Params& params) {
    validate_params(params);
    auto pos_it = index.id_lookup().find(review_id);
    if (pos_it == index.id_lookup().end())
        throw domain_error("review id not in index: " + review_id);
    uint32_t doc = pos_it->second;
    double score = 0.0;
    for (const std::string& term : query) {
        auto it = index.postings.find(term);
        if (it == index.postings.end()) continue;
        const std::vector<Posting>& postings = it->second;
        auto p = std::lower_bound(postings.begin(), postings.end(), doc,
                                  [](const Posting& a, uint32_t d) { return a.doc < d; });
        if (p == postings.end() || p->doc != doc) continue;
        score += term_weight(p->tf, index.doc_lens[doc], index, params, postings.size());
    }
    return score;
}

std::vector<std::pair<std::string, double>> bm25_topk(const std::vector<std::string>& query,
                                                      const InvertedIndex& index,
                                                      const Bm25Params& params, size_t k) {
    validate_params(params);
    std::vector<double> scores(index.doc_count(), 0.0);
    std::vector<bool> matched(index.doc_count(), false);
    for (const std::string& term : query) {
        auto it = index.postings.find(term);
        if (it == index.postings.end()) continue;
        uint64_t df = it->second.size();
        for (const Posting& p : it->second) {
            scores[p.doc] += term_weight(p.tf, index.doc_lens[p.doc], index, params, df);
            matched[p.doc] = true;
        }
    }
    std::vector<std::pair<std::string, double>> out;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (matched[i]) out.emplace_back(index.doc_ids[i], scores[i]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

}  // namespace revrank
