#include "ranker.hpp"

#include <algorithm>
#include <json.hpp>

#include "errors.hpp"
#include "text.hpp"

namespace revrank {

using nlohmann::json;

MethodId parse_method(const std::string& name) {
    std::string lower;
    lower.reserve(name.size());
    for (char c : name)
        lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    MethodId m;
    if (lower == "bm25") {
        m.is_bm25 = true;
        return m;
    }
    if (lower == "glove") {
        m.variant = RewardVariant::None;
        return m;
    }
    if (lower.rfind("glove_", 0) == 0) {
        m.variant = parse_variant(lower.substr(6));
        return m;
    }
    throw config_error("unknown method '" + name +
                       "' (expected bm25|glove|glove_sigmoid|glove_isigmoid|glove_msigmoid|"
                       "glove_imsigmoid)");
}

std::string method_display_name(const MethodId& method) {
    if (method.is_bm25) return "BM25";
    switch (method.variant) {
        case RewardVariant::None: return "GloVe";
        case RewardVariant::Sigmoid: return "GloVe_Sigmoid";
        case RewardVariant::ISigmoid: return "GloVe_iSigmoid";
        case RewardVariant::MSigmoid: return "GloVe_mSigmoid";
        case RewardVariant::IMSigmoid: return "GloVe_imSigmoid";
    }
    return "GloVe";
}

double rank_score(double c_s, double e_c) { return c_s * e_c; }

RankedList rank(const std::string& attribute, const MethodId& method, size_t k,
                const RankStores& stores) {
    RankedList list;
    list.attribute = attribute;
    list.method = method;

    TokenizerFn tokenizer = TokenizerRegistry::instance().get(stores.tokenizer);
    const std::unordered_set<std::string>& stopwords =
        stores.stopwords ? *stores.stopwords : default_stopwords();
    std::vector<std::string> attr_tokens =
        remove_stopwords(tokenizer(clean_text(attribute)), stopwords);
    if (attr_tokens.empty())
        throw domain_error("attribute query '" + attribute + "' yields no tokens");

    if (method.is_bm25) {
        if (!stores.index) throw config_error("bm25 ranking needs a built index");
        for (auto& [id, score] : bm25_topk(attr_tokens, *stores.index, stores.bm25, k)) {
            RankEntry e;
            e.review_id = id;
            e.score = score;
            list.entries.push_back(std::move(e));
        }
        return list;
    }

    if (!stores.negatives) throw config_error("embedding ranking needs the corpus store");
    if (!stores.table) throw config_error("embedding ranking needs a vector table");
    if (!stores.lexicon) throw config_error("embedding ranking needs a lexicon");

    std::vector<double> attr_vec;
    try {
        attr_vec = mean_vector(attr_tokens, *stores.table);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain)
            throw domain_error("attribute query '" + attribute +
                               "' has no in-vocabulary token");
        throw;
    }

    for (const Review* r : *stores.negatives) {
        if (r->score != 1) continue;
        uint64_t skipped = 0;
        std::vector<double> review_vec;
        try {
            review_vec = mean_vector(r->tokens, *stores.table, &skipped);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Domain) {
                ++list.excluded_oov;
                continue;
            }
            throw;
        }
        RankEntry entry;
        entry.review_id = r->id;
        entry.has_components = true;
        entry.c_s = cosine(attr_vec, review_vec);
        entry.e_n = polarity(r->tokens, *stores.lexicon).e_n;
        entry.e_c = reward(entry.e_n, method.variant);
        entry.score = rank_score(entry.c_s, entry.e_c);
        list.entries.push_back(std::move(entry));
    }

    std::sort(list.entries.begin(), list.entries.end(),
              [](const RankEntry& a, const RankEntry& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.review_id < b.review_id;
              });
    if (list.entries.size() > k) list.entries.resize(k);
    return list;
}

std::string ranked_list_to_jsonl(const RankedList& list) {
    std::string out;
    std::string method = method_display_name(list.method);
    size_t position = 0;
    for (const RankEntry& e : list.entries) {
        json j;
        j["attribute"] = list.attribute;
        j["method"] = method;
        j["rank"] = ++position;
        j["review_id"] = e.review_id;
        j["score"] = e.score;
        if (e.has_components) {
            j["c_s"] = e.c_s;
            j["e_n"] = e.e_n;
            j["e_c"] = e.e_c;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace revrank
