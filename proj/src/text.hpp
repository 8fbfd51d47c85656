#pragma once

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace revrank {

// Best-effort noise removal: URLs, HTML entities, emoji and other symbol
// codepoints, control characters and invalid UTF-8 are replaced by spaces,
// then whitespace is collapsed and trimmed. Idempotent.
std::string clean_text(const std::string& text);

using TokenizerFn = std::function<std::vector<std::string>(const std::string&)>;

// Named tokenizers so alternative splitting strategies can be plugged in.
class TokenizerRegistry {
public:
    static TokenizerRegistry& instance();

    void register_tokenizer(const std::string& name, TokenizerFn fn);
    // Unknown name raises a config error listing the registered names.
    TokenizerFn get(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    TokenizerRegistry();
    std::vector<std::pair<std::string, TokenizerFn>> entries_;
};

// The default "whitespace" tokenizer: ASCII letters are lowercased, runs of
// alphanumerics (plus any non-ASCII bytes) form tokens, everything else
// separates.
std::vector<std::string> whitespace_tokenize(const std::string& text);

std::unordered_set<std::string> load_stopwords(const std::string& path);
const std::unordered_set<std::string>& default_stopwords();

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stopwords);

}  // namespace revrank
