#include "corpus.hpp"

#include <fstream>
#include <json.hpp>

#include "errors.hpp"
#include "text.hpp"

namespace revrank {

using nlohmann::json;

bool filter_review(const std::vector<std::string>& tokens, size_t min_len) {
    return tokens.size() >= min_len;
}

std::string IngestStats::to_json() const {
    json j;
    j["total_ingested"] = total_ingested;
    j["kept"] = kept;
    j["dropped_short"] = dropped_short;
    j["dropped_nonnegative"] = dropped_nonnegative;
    j["malformed"] = malformed;
    return j.dump();
}

namespace {

IngestStats read_stats_sidecar(const std::string& path) {
    IngestStats stats;
    std::ifstream in(path);
    if (!in) return stats;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw io_error("corrupt stats sidecar: " + path);
    stats.total_ingested = j.value("total_ingested", 0ULL);
    stats.kept = j.value("kept", 0ULL);
    stats.dropped_short = j.value("dropped_short", 0ULL);
    stats.dropped_nonnegative = j.value("dropped_nonnegative", 0ULL);
    stats.malformed = j.value("malformed", 0ULL);
    return stats;
}

void write_stats_sidecar(const std::string& path, const IngestStats& stats) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write stats sidecar: " + path);
    out << stats.to_json() << '\n';
}

json review_to_json(const Review& r) {
    json j;
    j["category"] = r.category;
    j["id"] = r.id;
    j["product_id"] = r.product_id;
    j["score"] = r.score;
    j["text"] = r.text;
    j["tokens"] = r.tokens;
    return j;
}

// Extract one input record; returns false (malformed) on any contract breach.
bool parse_input_record(const json& j, Review& out) {
    if (!j.is_object()) return false;
    auto id_it = j.find("id");
    if (id_it == j.end() || !id_it->is_string()) return false;
    out.id = id_it->get<std::string>();
    if (out.id.empty()) return false;
    auto score_it = j.find("score");
    if (score_it == j.end() || !score_it->is_number_integer()) return false;
    int64_t score = score_it->get<int64_t>();
    if (score < 1 || score > 5) return false;
    out.score = static_cast<int>(score);
    auto text_it = j.find("text");
    if (text_it == j.end() || !text_it->is_string()) return false;
    out.text = text_it->get<std::string>();
    auto pid_it = j.find("product_id");
    if (pid_it != j.end()) {
        if (!pid_it->is_string()) return false;
        out.product_id = pid_it->get<std::string>();
    }
    auto cat_it = j.find("category");
    if (cat_it != j.end()) {
        if (!cat_it->is_string()) return false;
        out.category = cat_it->get<std::string>();
    }
    return true;
}

}  // namespace

IngestStats ingest(const std::string& input_path, const std::string& store_path,
                   const IngestOptions& options) {
    std::ifstream in(input_path);
    if (!in) throw io_error("cannot open input file: " + input_path);

    TokenizerFn tokenizer = TokenizerRegistry::instance().get(options.tokenizer);
    const std::unordered_set<std::string>& stopwords =
        options.stopwords ? *options.stopwords : default_stopwords();

    std::unordered_set<std::string> known_ids;
    {
        std::ifstream store_in(store_path);
        if (store_in) {
            for (const Review& r : load_store(store_path)) known_ids.insert(r.id);
        }
    }

    IngestStats stats = read_stats_sidecar(store_path + ".stats.json");

    std::ofstream out(store_path, std::ios::app);
    if (!out) throw io_error("cannot open store for append: " + store_path);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        json j = json::parse(line, nullptr, false);
        Review r;
        if (j.is_discarded() || !parse_input_record(j, r) || known_ids.count(r.id)) {
            ++stats.malformed;
            continue;
        }
        known_ids.insert(r.id);
        ++stats.total_ingested;

        r.text = clean_text(r.text);
        r.tokens = remove_stopwords(tokenizer(r.text), stopwords);

        if (r.score != 1) {
            // Kept in the store for lexicon ratios, never ranked.
            ++stats.dropped_nonnegative;
            out << review_to_json(r).dump() << '\n';
        } else if (!filter_review(r.tokens, options.min_len)) {
            ++stats.dropped_short;
        } else {
            ++stats.kept;
            out << review_to_json(r).dump() << '\n';
        }
    }
    if (!out) throw io_error("write failure on store: " + store_path);
    out.close();

    write_stats_sidecar(store_path + ".stats.json", stats);
    return stats;
}

std::vector<Review> load_store(const std::string& store_path) {
    std::ifstream in(store_path);
    if (!in) throw io_error("cannot open corpus store: " + store_path);
    std::vector<Review> reviews;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw io_error("corrupt store line " + std::to_string(lineno) + " in " + store_path);
        Review r;
        try {
            r.id = j.at("id").get<std::string>();
            r.product_id = j.value("product_id", "");
            r.category = j.value("category", "");
            r.score = j.at("score").get<int>();
            r.text = j.value("text", "");
            r.tokens = j.at("tokens").get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            throw io_error("corrupt store line " + std::to_string(lineno) + " in " +
                           store_path + ": " + e.what());
        }
        reviews.push_back(std::move(r));
    }
    return reviews;
}

std::vector<const Review*> negative_partition(const std::vector<Review>& reviews) {
    std::vector<const Review*> out;
    for (const Review& r : reviews) {
        if (r.score == 1) out.push_back(&r);
    }
    return out;
}

std::vector<const Review*> lexicon_partition(const std::vector<Review>& reviews) {
    std::vector<const Review*> out;
    for (const Review& r : reviews) {
        if (r.score == 1 || r.score == 5) out.push_back(&r);
    }
    return out;
}

}  // namespace revrank
