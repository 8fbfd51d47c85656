#include "config.hpp"

#include <fstream>

#include "errors.hpp"

namespace revrank {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        size_t consumed = 0;
        double v = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key " + key + ": '" + value + "' is not a number");
    }
}

uint64_t parse_count(const std::string& value, const std::string& key) {
    try {
        size_t consumed = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        uint64_t v = std::stoull(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key " + key + ": '" + value + "' is not a count");
    }
}

}  // namespace

void set_value(PipelineConfig& config, const std::string& dotted_key,
               const std::string& raw_value) {
    size_t dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw config_error("config key '" + dotted_key + "' is missing its section");
    std::string section = dotted_key.substr(0, dot);
    std::string key = dotted_key.substr(dot + 1);
    std::string value = unquote(trim(raw_value));

    if (section == "paths") {
        if (key == "corpus") config.paths.corpus = value;
        else if (key == "stopwords") config.paths.stopwords = value;
        else if (key == "seeds") config.paths.seeds = value;
        else if (key == "lexicon") config.paths.lexicon = value;
        else if (key == "vectors") config.paths.vectors = value;
        else if (key == "index") config.paths.index = value;
        else if (key == "annotations") config.paths.annotations = value;
        else if (key == "gold") config.paths.gold = value;
        else throw config_error("unknown config key paths." + key);
        return;
    }
    if (section == "corpus") {
        if (key == "tokenizer") {
            config.tokenizer = value;
        } else if (key == "min_len") {
            config.min_len = parse_count(value, dotted_key);
        } else {
            throw config_error("unknown config key corpus." + key);
        }
        return;
    }
    if (section == "lexicon") {
        if (key == "admit_threshold") {
            config.lexicon_expansion.admit_threshold = parse_real(value, dotted_key);
            if (!(config.lexicon_expansion.admit_threshold > 0))
                throw config_error("lexicon.admit_threshold must be > 0");
        } else if (key == "stop_threshold") {
            config.lexicon_expansion.stop_threshold = parse_real(value, dotted_key);
            if (!(config.lexicon_expansion.stop_threshold > 0))
                throw config_error("lexicon.stop_threshold must be > 0");
        } else if (key == "alpha") {
            config.lexicon_expansion.alpha = parse_real(value, dotted_key);
            if (config.lexicon_expansion.alpha < 0)
                throw config_error("lexicon.alpha must be >= 0");
        } else if (key == "max_iterations") {
            config.lexicon_expansion.max_iterations =
                static_cast<uint32_t>(parse_count(value, dotted_key));
        } else {
            throw config_error("unknown config key lexicon." + key);
        }
        return;
    }
    if (section == "bm25") {
        if (key == "k1") {
            config.bm25.k1 = parse_real(value, dotted_key);
            if (!(config.bm25.k1 > 0)) throw config_error("bm25.k1 must be > 0");
        } else if (key == "b") {
            config.bm25.b = parse_real(value, dotted_key);
            if (!(config.bm25.b >= 0 && config.bm25.b <= 1))
                throw config_error("bm25.b must be in [0,1]");
        } else {
            throw config_error("unknown config key bm25." + key);
        }
        return;
    }
    if (section == "rank") {
        if (key == "variant") {
            config.rank_variant = value;
        } else if (key == "top_k") {
            config.top_k = parse_count(value, dotted_key);
        } else {
            throw config_error("unknown config key rank." + key);
        }
        return;
    }
    if (section == "train") {
        if (key == "dim") {
            config.train.dim = parse_count(value, dotted_key);
            if (config.train.dim == 0) throw config_error("train.dim must be >= 1");
        } else if (key == "window") {
            config.train.window = parse_count(value, dotted_key);
        } else if (key == "iterations") {
            config.train.iterations = static_cast<uint32_t>(parse_count(value, dotted_key));
        } else if (key == "learning_rate") {
            config.train.learning_rate = parse_real(value, dotted_key);
            if (!(config.train.learning_rate > 0))
                throw config_error("train.learning_rate must be > 0");
        } else if (key == "seed") {
            config.train.seed = parse_count(value, dotted_key);
        } else {
            throw config_error("unknown config key train." + key);
        }
        return;
    }
    throw config_error("unknown config section [" + section + "]");
}

void merge_config(PipelineConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::string line;
    std::string section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // Strip comments outside quotes.
        bool quoted = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw config_error(path + " line " + std::to_string(lineno) +
                                   ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw config_error(path + " line " + std::to_string(lineno) + ": empty section");
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + " line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw config_error(path + " line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw config_error(path + " line " + std::to_string(lineno) +
                               ": key outside any [section]");
        try {
            set_value(config, section + "." + key, value);
        } catch (const Error& e) {
            throw Error(e.kind(), path + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

PipelineConfig load_config(const std::string& path) {
    PipelineConfig config;
    merge_config(config, path);
    return config;
}

}  // namespace revrank
