#include "embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace revrank {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool is_uint(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

double parse_component(const std::string& tok, size_t lineno, const std::string& path) {
    double v;
    size_t consumed = 0;
    try {
        v = std::stod(tok, &consumed);
    } catch (const std::exception&) {
        throw io_error(path + " line " + std::to_string(lineno) + ": bad vector component '" +
                       tok + "'");
    }
    if (consumed != tok.size())
        throw io_error(path + " line " + std::to_string(lineno) + ": bad vector component '" +
                       tok + "'");
    if (!std::isfinite(v))
        throw io_error(path + " line " + std::to_string(lineno) +
                       ": non-finite vector component");
    return v;
}

}  // namespace

LoadedTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open vector file: " + path);

    LoadedTable result;
    EmbeddingTable& table = result.table;
    std::string line;
    size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        if (first_content) {
            first_content = false;
            // A "vocab_size dim" header is two bare integers.
            if (toks.size() == 2 && is_uint(toks[0]) && is_uint(toks[1])) continue;
        }
        if (toks.size() < 2)
            throw io_error(path + " line " + std::to_string(lineno) + ": word without vector");
        size_t line_dim = toks.size() - 1;
        if (table.dim == 0) {
            table.dim = line_dim;
        } else if (line_dim != table.dim) {
            throw io_error(path + " line " + std::to_string(lineno) + ": expected " +
                           std::to_string(table.dim) + " components, got " +
                           std::to_string(line_dim));
        }
        std::vector<double> vec(line_dim);
        for (size_t i = 0; i < line_dim; ++i)
            vec[i] = parse_component(toks[i + 1], lineno, path);
        auto it = table.vectors.find(toks[0]);
        if (it != table.vectors.end()) {
            it->second = std::move(vec);  // last occurrence wins
            ++result.duplicates;
        } else {
            table.vectors.emplace(toks[0], std::move(vec));
        }
    }
    if (table.vectors.empty()) throw io_error("vector file has no vectors: " + path);
    return result;
}

void save_table(const std::string& path, const EmbeddingTable& table) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write vector file: " + path);
    out << table.vocab_size() << ' ' << table.dim << '\n';
    out << std::setprecision(17);
    std::map<std::string, const std::vector<double>*> ordered;
    for (const auto& [w, v] : table.vectors) ordered.emplace(w, &v);
    for (const auto& [w, v] : ordered) {
        out << w;
        for (double x : *v) out << ' ' << x;
        out << '\n';
    }
    if (!out) throw io_error("write failure on vector file: " + path);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw domain_error("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + ")");
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw domain_error("cosine: zero-norm vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> mean_vector(const std::vector<std::string>& tokens,
                                const EmbeddingTable& table, uint64_t* skipped) {
    // Group duplicates and accumulate in sorted-word order: identical token
    // multisets then sum in the same order regardless of input permutation.
    std::map<std::string, size_t> counts;
    uint64_t oov = 0;
    size_t in_vocab = 0;
    for (const std::string& t : tokens) {
        if (table.vectors.count(t)) {
            ++counts[t];
            ++in_vocab;
        } else {
            ++oov;
        }
    }
    if (skipped) *skipped = oov;
    if (in_vocab == 0)
        throw domain_error("no in-vocabulary token among " + std::to_string(tokens.size()) +
                           " tokens");
    std::vector<double> sum(table.dim, 0.0);
    for (const auto& [w, c] : counts) {
        const std::vector<double>& v = table.vectors.at(w);
        double weight = static_cast<double>(c);
        for (size_t i = 0; i < table.dim; ++i) sum[i] += weight * v[i];
    }
    double inv = 1.0 / static_cast<double>(in_vocab);
    for (double& x : sum) x *= inv;
    return sum;
}

double attribute_similarity(const std::vector<std::string>& attribute,
                            const std::vector<std::string>& review_tokens,
                            const EmbeddingTable& table) {
    return cosine(mean_vector(attribute, table), mean_vector(review_tokens, table));
}

}  // namespace revrank
