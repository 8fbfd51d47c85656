#include "metrics.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"

namespace revrank {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    for (;;) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void AnnotationSet::index_marks() {
    marks.clear();
    for (const AnnotationRecord& r : records)
        marks[r.attribute][r.review_id][r.annotator] = r.helpful;
}

AnnotationSet load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open annotation file: " + path);
    AnnotationSet set;
    std::string line;
    size_t lineno = 0;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> f = split_csv_line(t);
        if (!header_seen) {
            header_seen = true;
            if (f.size() == 4 && trim(f[0]) == "attribute" && trim(f[1]) == "annotator" &&
                trim(f[2]) == "review_id" && trim(f[3]) == "helpful")
                continue;
            throw io_error(path + ": expected header attribute,annotator,review_id,helpful");
        }
        if (f.size() != 4)
            throw io_error(path + " line " + std::to_string(lineno) + ": expected 4 fields");
        AnnotationRecord rec;
        rec.attribute = trim(f[0]);
        rec.annotator = trim(f[1]);
        rec.review_id = trim(f[2]);
        std::string helpful = trim(f[3]);
        if (helpful == "0") {
            rec.helpful = false;
        } else if (helpful == "1") {
            rec.helpful = true;
        } else {
            throw io_error(path + " line " + std::to_string(lineno) +
                           ": helpful must be 0 or 1");
        }
        if (rec.attribute.empty() || rec.annotator.empty() || rec.review_id.empty())
            throw io_error(path + " line " + std::to_string(lineno) + ": empty field");
        if (!seen.insert({rec.attribute, rec.annotator, rec.review_id}).second)
            throw io_error(path + " line " + std::to_string(lineno) +
                           ": duplicate (attribute, annotator, review_id) mark");
        set.records.push_back(std::move(rec));
    }
    set.index_marks();
    return set;
}

void load_gold(const std::string& path, AnnotationSet& into) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open gold-order file: " + path);
    std::string line;
    size_t lineno = 0;
    bool header_seen = false;
    // (attribute, annotator) -> rank -> review_id
    std::map<std::pair<std::string, std::string>, std::map<uint64_t, std::string>> ranked;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> f = split_csv_line(t);
        if (!header_seen) {
            header_seen = true;
            if (f.size() == 4 && trim(f[0]) == "attribute" && trim(f[1]) == "annotator" &&
                trim(f[2]) == "rank" && trim(f[3]) == "review_id")
                continue;
            throw io_error(path + ": expected header attribute,annotator,rank,review_id");
        }
        if (f.size() != 4)
            throw io_error(path + " line " + std::to_string(lineno) + ": expected 4 fields");
        std::string attribute = trim(f[0]);
        std::string annotator = trim(f[1]);
        std::string review_id = trim(f[3]);
        uint64_t rank = 0;
        try {
            rank = std::stoull(trim(f[2]));
        } catch (const std::exception&) {
            throw io_error(path + " line " + std::to_string(lineno) + ": bad rank");
        }
        if (rank == 0 || attribute.empty() || annotator.empty() || review_id.empty())
            throw io_error(path + " line " + std::to_string(lineno) + ": bad gold row");
        auto& slots = ranked[{attribute, annotator}];
        if (!slots.emplace(rank, review_id).second)
            throw io_error(path + " line " + std::to_string(lineno) + ": duplicate rank " +
                           std::to_string(rank));
    }
    for (const auto& [key, slots] : ranked) {
        std::vector<std::string> order;
        std::set<std::string> ids;
        order.reserve(slots.size());
        for (const auto& [rank, id] : slots) {
            if (!ids.insert(id).second)
                throw io_error(path + ": duplicate review id '" + id + "' in gold ordering for " +
                               key.first + "/" + key.second);
            order.push_back(id);
        }
        into.gold[key.first][key.second] = std::move(order);
    }
}

std::vector<std::string> consensus_gold(
    const std::map<std::string, std::vector<std::string>>& orderings) {
    if (orderings.empty()) return {};
    if (orderings.size() == 1) return orderings.begin()->second;
    std::set<std::string> all_ids;
    for (const auto& [annotator, order] : orderings)
        all_ids.insert(order.begin(), order.end());
    std::map<std::string, uint64_t> score;
    for (const auto& [annotator, order] : orderings) {
        std::unordered_map<std::string, uint64_t> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i + 1;
        uint64_t missing = order.size() + 1;
        for (const std::string& id : all_ids) {
            auto it = pos.find(id);
            score[id] += it == pos.end() ? missing : it->second;
        }
    }
    std::vector<std::string> out(all_ids.begin(), all_ids.end());
    std::sort(out.begin(), out.end(), [&score](const std::string& a, const std::string& b) {
        if (score[a] != score[b]) return score[a] < score[b];
        return a < b;
    });
    return out;
}

double top_n_rate(const std::vector<std::string>& gold, const std::vector<std::string>& ranked,
                  size_t n) {
    if (n < 1 || n > std::min(gold.size(), ranked.size()))
        throw config_error("top-n rate: n=" + std::to_string(n) + " out of range for lists of " +
                           std::to_string(gold.size()) + " and " + std::to_string(ranked.size()));
    std::set<std::string> gold_top(gold.begin(), gold.begin() + n);
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
        if (gold_top.count(ranked[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

double average_correct_rate(const std::vector<std::string>& gold,
                            const std::vector<std::string>& ranked) {
    if (gold.size() != ranked.size())
        throw domain_error("correct rate: lists rank different review sets");
    std::unordered_map<std::string, size_t> gold_pos;
    std::unordered_map<std::string, size_t> ranked_pos;
    for (size_t i = 0; i < gold.size(); ++i) gold_pos[gold[i]] = i;
    for (size_t i = 0; i < ranked.size(); ++i) ranked_pos[ranked[i]] = i;
    if (gold_pos.size() != gold.size() || ranked_pos.size() != ranked.size())
        throw domain_error("correct rate: duplicate review ids in an ordering");
    for (const auto& [id, pos] : gold_pos) {
        if (!ranked_pos.count(id))
            throw domain_error("correct rate: lists rank different review sets ('" + id +
                               "' missing)");
    }
    size_t m = gold.size();
    if (m < 2) return 1.0;  // no pairs to disagree on
    size_t agree = 0;
    size_t pairs = 0;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            ++pairs;
            // gold order: gold[i] before gold[j].
            if (ranked_pos[gold[i]] < ranked_pos[gold[j]]) ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(pairs);
}

HelpfulnessResult helpfulness_rate(const AnnotationSet& annotations,
                                   const std::map<std::string, std::string>& top1) {
    HelpfulnessResult result;
    for (const auto& [attribute, review_id] : top1) {
        auto attr_it = annotations.marks.find(attribute);
        const std::map<std::string, bool>* review_marks = nullptr;
        if (attr_it != annotations.marks.end()) {
            auto rev_it = attr_it->second.find(review_id);
            if (rev_it != attr_it->second.end()) review_marks = &rev_it->second;
        }
        if (!review_marks || review_marks->empty()) {
            result.coverage_gaps.push_back(attribute);
            continue;
        }
        for (const auto& [annotator, helpful] : *review_marks) {
            ++result.total;
            auto& per = result.per_annotator[annotator];
            ++per.second;
            if (helpful) {
                ++result.helpful;
                ++per.first;
            }
        }
    }
    result.rate = result.total == 0
                      ? 0.0
                      : static_cast<double>(result.helpful) / static_cast<double>(result.total);
    return result;
}

namespace {

// Gold ids the method never ranked are appended in ascending id order, i.e.
// treated as tied-last, so concordance stays computable for sparse engines
// like BM25.
std::vector<std::string> restrict_to_gold(const std::vector<std::string>& full_ranking,
                                          const std::vector<std::string>& gold) {
    std::set<std::string> gold_set(gold.begin(), gold.end());
    std::vector<std::string> restricted;
    restricted.reserve(gold.size());
    for (const std::string& id : full_ranking) {
        if (gold_set.count(id)) restricted.push_back(id);
    }
    std::set<std::string> have(restricted.begin(), restricted.end());
    for (const std::string& id : gold_set) {
        if (!have.count(id)) restricted.push_back(id);
    }
    return restricted;
}

}  // namespace

MetricReport compare_methods(const CompareInputs& inputs,
                             const std::vector<std::string>& attributes,
                             const std::vector<MethodId>& methods,
                             const AnnotationSet& annotations) {
    if (!inputs.reviews) throw config_error("compare_methods needs the corpus store");
    if (attributes.empty()) throw config_error("compare_methods needs at least one attribute");
    if (methods.empty()) throw config_error("compare_methods needs at least one method");

    MetricReport report;
    report.attributes = attributes;
    std::sort(report.attributes.begin(), report.attributes.end());

    // Partition negatives by category; each category is its own candidate
    // pool with its own in-memory index.
    std::map<std::string, std::vector<const Review*>> by_category;
    for (const Review& r : *inputs.reviews) {
        if (r.score == 1) by_category[r.category].push_back(&r);
    }
    if (by_category.empty()) throw domain_error("no negative reviews to evaluate");
    for (const auto& [category, pool] : by_category) report.categories.push_back(category);

    std::vector<const Review*> all_negatives;
    for (const Review& r : *inputs.reviews) {
        if (r.score == 1) all_negatives.push_back(&r);
    }

    bool any_bm25 = false;
    for (const MethodId& m : methods) any_bm25 |= m.is_bm25;
    std::map<std::string, InvertedIndex> category_index;
    InvertedIndex full_index;
    if (any_bm25) {
        for (const auto& [category, pool] : by_category)
            category_index.emplace(category, build_index(pool));
        full_index = build_index(all_negatives);
    }

    for (const MethodId& method : methods) {
        std::string name = method_display_name(method);
        report.methods.push_back(name);

        // Helpfulness per category.
        for (const auto& [category, pool] : by_category) {
            RankStores stores;
            stores.negatives = &pool;
            stores.table = inputs.table;
            stores.lexicon = inputs.lexicon;
            stores.bm25 = inputs.bm25;
            stores.tokenizer = inputs.tokenizer;
            stores.stopwords = inputs.stopwords;
            if (any_bm25) stores.index = &category_index.at(category);

            std::map<std::string, std::string> top1;
            for (const std::string& attribute : attributes) {
                RankedList ranked = rank(attribute, method, 1, stores);
                if (ranked.entries.empty()) {
                    report.coverage_gaps.push_back(name + "/" + category + "/" + attribute +
                                                   " (no result)");
                    continue;
                }
                top1[attribute] = ranked.entries[0].review_id;
            }
            HelpfulnessResult h = helpfulness_rate(annotations, top1);
            MetricCell cell;
            cell.helpful = h.helpful;
            cell.total = h.total;
            cell.rate = h.rate;
            report.helpfulness[name][category] = cell;
            for (const std::string& gap : h.coverage_gaps)
                report.coverage_gaps.push_back(name + "/" + category + "/" + gap);
            for (const auto& [annotator, counts] : h.per_annotator) {
                MetricCell& per = report.per_annotator[name][annotator];
                per.helpful += counts.first;
                per.total += counts.second;
                per.rate = per.total == 0 ? 0.0
                                          : static_cast<double>(per.helpful) /
                                                static_cast<double>(per.total);
            }
        }

        // Ranking-agreement metrics against gold orderings, over the whole
        // negative partition.
        RankStores full_stores;
        full_stores.negatives = &all_negatives;
        full_stores.table = inputs.table;
        full_stores.lexicon = inputs.lexicon;
        full_stores.bm25 = inputs.bm25;
        full_stores.tokenizer = inputs.tokenizer;
        full_stores.stopwords = inputs.stopwords;
        if (any_bm25) full_stores.index = &full_index;

        std::map<uint64_t, std::pair<double, uint64_t>> top_n_sums;  // n -> (sum, count)
        double acr_sum = 0.0;
        uint64_t acr_count = 0;
        for (const std::string& attribute : attributes) {
            auto gold_it = annotations.gold.find(attribute);
            if (gold_it == annotations.gold.end()) continue;
            std::vector<std::string> gold = consensus_gold(gold_it->second);
            if (gold.empty()) continue;
            RankedList ranked = rank(attribute, method, all_negatives.size(), full_stores);
            std::vector<std::string> ranked_ids;
            ranked_ids.reserve(ranked.entries.size());
            for (const RankEntry& e : ranked.entries) ranked_ids.push_back(e.review_id);
            std::vector<std::string> restricted = restrict_to_gold(ranked_ids, gold);
            for (uint64_t n : {uint64_t{1}, uint64_t{3}, uint64_t{5}}) {
                if (n > gold.size()) continue;
                auto& [sum, count] = top_n_sums[n];
                sum += top_n_rate(gold, restricted, n);
                ++count;
            }
            acr_sum += average_correct_rate(gold, restricted);
            ++acr_count;
        }
        for (const auto& [n, sum_count] : top_n_sums)
            report.top_n[name][n] = sum_count.first / static_cast<double>(sum_count.second);
        if (acr_count > 0) report.average_correct[name] = acr_sum / static_cast<double>(acr_count);
    }
    return report;
}

std::string report_to_json(const MetricReport& report) {
    json j;
    j["methods"] = report.methods;
    j["categories"] = report.categories;
    j["attributes"] = report.attributes;
    json helpfulness = json::object();
    for (const auto& [method, cells] : report.helpfulness) {
        json row = json::object();
        for (const auto& [category, cell] : cells) {
            row[category] = {{"rate", cell.rate},
                             {"helpful", cell.helpful},
                             {"total", cell.total}};
        }
        helpfulness[method] = row;
    }
    j["helpfulness"] = helpfulness;
    json per_annotator = json::object();
    for (const auto& [method, cells] : report.per_annotator) {
        json row = json::object();
        for (const auto& [annotator, cell] : cells) {
            row[annotator] = {{"rate", cell.rate},
                              {"helpful", cell.helpful},
                              {"total", cell.total}};
        }
        per_annotator[method] = row;
    }
    j["per_annotator"] = per_annotator;
    json top_n = json::object();
    for (const auto& [method, rates] : report.top_n) {
        json row = json::object();
        for (const auto& [n, rate] : rates) row[std::to_string(n)] = rate;
        top_n[method] = row;
    }
    j["top_n_rate"] = top_n;
    json acr = json::object();
    for (const auto& [method, rate] : report.average_correct) acr[method] = rate;
    j["average_correct_rate"] = acr;
    j["coverage_gaps"] = report.coverage_gaps;
    return j.dump();
}

std::string report_table(const MetricReport& report) {
    std::vector<std::string> headers;
    headers.push_back("method");
    for (const std::string& c : report.categories) headers.push_back(c.empty() ? "all" : c);

    std::vector<std::vector<std::string>> rows;
    for (const std::string& method : report.methods) {
        std::vector<std::string> row;
        row.push_back(method);
        auto m_it = report.helpfulness.find(method);
        for (const std::string& category : report.categories) {
            std::string cell = "-";
            if (m_it != report.helpfulness.end()) {
                auto c_it = m_it->second.find(category);
                if (c_it != m_it->second.end() && c_it->second.total > 0) {
                    std::ostringstream os;
                    os << std::fixed << std::setprecision(2) << c_it->second.rate;
                    cell = os.str();
                }
            }
            row.push_back(cell);
        }
        rows.push_back(std::move(row));
    }

    std::vector<size_t> widths(headers.size(), 0);
    for (size_t i = 0; i < headers.size(); ++i) widths[i] = headers[i].size();
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(widths[i])) << row[i];
            if (i + 1 < row.size()) out << "  ";
        }
        out << '\n';
    };
    emit_row(headers);
    std::vector<std::string> rule;
    for (size_t w : widths) rule.push_back(std::string(w, '-'));
    emit_row(rule);
    for (const auto& row : rows) emit_row(row);
    return out.str();
}

}  // namespace revrank
