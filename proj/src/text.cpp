#include "text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace revrank {

namespace {

bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool has_prefix_ci(const std::string& s, size_t pos, const char* prefix) {
    for (size_t i = 0; prefix[i] != '\0'; ++i) {
        if (pos + i >= s.size()) return false;
        char c = s[pos + i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (c != prefix[i]) return false;
    }
    return true;
}

// Drop whitespace-delimited tokens that look like URLs.
std::string strip_urls(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (is_space_byte(static_cast<unsigned char>(s[i]))) {
            out.push_back(s[i]);
            ++i;
            continue;
        }
        size_t end = i;
        while (end < s.size() && !is_space_byte(static_cast<unsigned char>(s[end]))) ++end;
        bool url = has_prefix_ci(s, i, "http://") || has_prefix_ci(s, i, "https://") ||
                   has_prefix_ci(s, i, "ftp://") || has_prefix_ci(s, i, "www.");
        if (url) {
            out.push_back(' ');
        } else {
            out.append(s, i, end - i);
        }
        i = end;
    }
    return out;
}

// Replace &name; / &#123; / &#x1F; sequences with a space.
std::string strip_entities(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            ++i;
            continue;
        }
        size_t j = i + 1;
        bool matched = false;
        if (j < s.size() && s[j] == '#') {
            ++j;
            bool hex = (j < s.size() && (s[j] == 'x' || s[j] == 'X'));
            if (hex) ++j;
            size_t digits = 0;
            while (j < s.size() && digits < 8 &&
                   (hex ? std::isxdigit(static_cast<unsigned char>(s[j]))
                        : std::isdigit(static_cast<unsigned char>(s[j])))) {
                ++j;
                ++digits;
            }
            if (digits > 0 && j < s.size() && s[j] == ';') {
                matched = true;
                ++j;
            }
        } else {
            size_t letters = 0;
            while (j < s.size() && letters < 32 &&
                   std::isalpha(static_cast<unsigned char>(s[j]))) {
                ++j;
                ++letters;
            }
            if (letters > 0 && j < s.size() && s[j] == ';') {
                matched = true;
                ++j;
            }
        }
        if (matched) {
            out.push_back(' ');
            i = j;
        } else {
            out.push_back(s[i]);
            ++i;
        }
    }
    return out;
}

bool is_emoji_codepoint(uint32_t cp) {
    return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs, emoticons, symbols
           (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
           (cp >= 0x2B00 && cp <= 0x2BFF) ||    // arrows and symbols
           (cp >= 0xFE00 && cp <= 0xFE0F) ||    // variation selectors
           cp == 0x200D ||                      // zero-width joiner
           cp == 0x20E3;                        // combining keycap
}

bool is_control_codepoint(uint32_t cp) {
    if (cp == '\t' || cp == '\n' || cp == '\r') return false;  // plain whitespace
    return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F);
}

// Decode UTF-8; emoji, control codepoints and invalid bytes become spaces.
std::string strip_codepoints(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            if (is_control_codepoint(c))
                out.push_back(' ');
            else
                out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        size_t len = 0;
        uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        }
        bool valid = len > 0 && i + len <= s.size();
        if (valid) {
            for (size_t k = 1; k < len; ++k) {
                unsigned char cc = static_cast<unsigned char>(s[i + k]);
                if ((cc & 0xC0) != 0x80) {
                    valid = false;
                    break;
                }
                cp = (cp << 6) | (cc & 0x3F);
            }
        }
        if (!valid) {
            out.push_back(' ');
            ++i;
            continue;
        }
        // Reject overlong forms and out-of-range codepoints.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(' ');
            i += len;
            continue;
        }
        if (is_emoji_codepoint(cp) || is_control_codepoint(cp)) {
            out.push_back(' ');
        } else {
            out.append(s, i, len);
        }
        i += len;
    }
    return out;
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // trims leading whitespace
    for (unsigned char c : s) {
        if (is_space_byte(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(static_cast<char>(c));
            in_space = false;
        }
    }
    return out;
}

std::string clean_pass(const std::string& s) {
    return collapse_whitespace(strip_urls(strip_codepoints(strip_entities(s))));
}

}  // namespace

std::string clean_text(const std::string& text) {
    // Removals can expose new patterns (a URL hidden behind an entity), so
    // iterate to a fixpoint. Every changing pass strictly shrinks the string.
    std::string cur = clean_pass(text);
    for (;;) {
        std::string next = clean_pass(cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

std::vector<std::string> whitespace_tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        bool word_char;
        if (c >= 0x80) {
            word_char = true;  // keep non-ASCII intact
        } else if (c >= 'A' && c <= 'Z') {
            c = static_cast<unsigned char>(c - 'A' + 'a');
            word_char = true;
        } else {
            word_char = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        }
        if (word_char) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

TokenizerRegistry::TokenizerRegistry() {
    entries_.emplace_back("whitespace", whitespace_tokenize);
}

TokenizerRegistry& TokenizerRegistry::instance() {
    static TokenizerRegistry registry;
    return registry;
}

void TokenizerRegistry::register_tokenizer(const std::string& name, TokenizerFn fn) {
    for (auto& [n, f] : entries_) {
        if (n == name) {
            f = std::move(fn);
            return;
        }
    }
    entries_.emplace_back(name, std::move(fn));
}

TokenizerFn TokenizerRegistry::get(const std::string& name) const {
    for (const auto& [n, f] : entries_) {
        if (n == name) return f;
    }
    std::ostringstream msg;
    msg << "unknown tokenizer '" << name << "' (registered:";
    for (const auto& [n, f] : entries_) msg << ' ' << n;
    msg << ")";
    throw config_error(msg.str());
}

std::vector<std::string> TokenizerRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [n, f] : entries_) out.push_back(n);
    return out;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open stopword file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t");
        std::string w = line.substr(a, b - a + 1);
        if (!w.empty() && w[0] != '#') words.insert(w);
    }
    return words;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "an", "the", "and", "or", "of", "to", "in", "on", "at", "for",
        "with", "as", "by", "is", "are", "was", "were", "be", "been", "being",
        "it", "its", "this", "that", "these", "those", "i", "we", "you", "he",
        "she", "they", "my", "your",
    };
    return words;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stopwords.count(t)) out.push_back(t);
    }
    return out;
}

}  // namespace revrank
