#ifndef CTACLUST_PORTER2_HPP
#define CTACLUST_PORTER2_HPP

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <utility>

// English Snowball ("Porter2") stemmer, classic rule set.
// Input is expected to be lowercase; 'Y' is used internally to mark consonantal y.

namespace ctaclust::porter2 {

namespace detail {

inline bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

inline bool contains_vowel(std::string_view w) {
    return std::any_of(w.begin(), w.end(), is_vowel);
}

inline bool ends_double(std::string_view w) {
    if (w.size() < 2) {
        return false;
    }
    char c = w.back();
    static constexpr std::string_view doubles = "bdfgmnprt";
    return w[w.size() - 2] == c && doubles.find(c) != std::string_view::npos;
}

inline bool ends_short_syllable(std::string_view w) {
    const std::size_t n = w.size();
    if (n >= 3) {
        char c = w[n - 1];
        return !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && !is_vowel(c) && c != 'w' && c != 'x'
               && c != 'Y';
    }
    return n == 2 && is_vowel(w[0]) && !is_vowel(w[1]);
}

// Start of the region following the first vowel/non-vowel pair at or after `from`.
inline std::size_t region_after(std::string_view w, std::size_t from) {
    for (std::size_t i = from; i + 1 < w.size(); ++i) {
        if (is_vowel(w[i]) && !is_vowel(w[i + 1])) {
            return i + 2;
        }
    }
    return w.size();
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest suffix of `w` among `rules`, or nullptr.
template <std::size_t N>
const Rule* longest_match(std::string_view w, const std::array<Rule, N>& rules) {
    const Rule* best = nullptr;
    for (const auto& r : rules) {
        if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size())) {
            best = &r;
        }
    }
    return best;
}

inline void replace_suffix(std::string& w, std::size_t suffix_len, std::string_view repl) {
    w.resize(w.size() - suffix_len);
    w += repl;
}

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 18> exceptional = {{
    {"skis", "ski"},     {"skies", "sky"},    {"dying", "die"},   {"lying", "lie"},
    {"tying", "tie"},    {"idly", "idl"},     {"gently", "gentl"}, {"ugly", "ugli"},
    {"early", "earli"},  {"only", "onli"},    {"singly", "singl"}, {"sky", "sky"},
    {"news", "news"},    {"howe", "howe"},    {"atlas", "atlas"},  {"cosmos", "cosmos"},
    {"bias", "bias"},    {"andes", "andes"},
}};

inline constexpr std::array<std::string_view, 8> invariant_after_1a = {
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"};

inline constexpr std::array<Rule, 24> step2_rules = {{
    {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},  {"abli", "able"},
    {"entli", "ent"},   {"izer", "ize"},    {"ization", "ize"}, {"ational", "ate"},
    {"ation", "ate"},   {"ator", "ate"},    {"alism", "al"},   {"aliti", "al"},
    {"alli", "al"},     {"fulness", "ful"}, {"ousli", "ous"},  {"ousness", "ous"},
    {"iveness", "ive"}, {"iviti", "ive"},   {"biliti", "ble"}, {"bli", "ble"},
    {"ogi", "og"},      {"fulli", "ful"},   {"lessli", "less"}, {"li", ""},
}};

inline constexpr std::array<Rule, 9> step3_rules = {{
    {"tional", "tion"}, {"ational", "ate"}, {"alize", "al"}, {"icate", "ic"}, {"iciti", "ic"},
    {"ical", "ic"},     {"ful", ""},        {"ness", ""},    {"ative", ""},
}};

inline constexpr std::array<Rule, 18> step4_rules = {{
    {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},  {"able", ""},
    {"ible", ""}, {"ant", ""}, {"ement", ""}, {"ment", ""}, {"ent", ""}, {"ism", ""},
    {"ate", ""}, {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""}, {"ion", ""},
}};

inline constexpr std::array<Rule, 6> step1b_rules = {{
    {"eed", "ee"}, {"eedly", "ee"}, {"ed", ""}, {"edly", ""}, {"ing", ""}, {"ingly", ""},
}};

struct Stemmer {
    std::string w;
    std::size_t r1 = 0;
    std::size_t r2 = 0;

    bool in_r1(std::size_t suffix_len) const { return w.size() - suffix_len >= r1; }
    bool in_r2(std::size_t suffix_len) const { return w.size() - suffix_len >= r2; }

    void prelude() {
        if (!w.empty() && w[0] == '\'') {
            w.erase(0, 1);
        }
        if (!w.empty() && w[0] == 'y') {
            w[0] = 'Y';
        }
        for (std::size_t i = 1; i < w.size(); ++i) {
            if (w[i] == 'y' && is_vowel(w[i - 1])) {
                w[i] = 'Y';
            }
        }
    }

    void mark_regions() {
        std::string_view v = w;
        if (v.starts_with("gener") || v.starts_with("arsen")) {
            r1 = 5;
        } else if (v.starts_with("commun")) {
            r1 = 6;
        } else {
            r1 = region_after(v, 0);
        }
        r2 = region_after(v, r1);
    }

    void step0() {
        for (std::string_view s : {"'s'", "'s", "'"}) {
            if (ends_with(w, s)) {
                w.resize(w.size() - s.size());
                return;
            }
        }
    }

    void step1a() {
        if (ends_with(w, "sses")) {
            replace_suffix(w, 4, "ss");
        } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
            replace_suffix(w, 3, w.size() > 4 ? "i" : "ie");
        } else if (ends_with(w, "us") || ends_with(w, "ss")) {
            // unchanged
        } else if (ends_with(w, "s")) {
            // a vowel somewhere before the letter preceding the s
            if (w.size() >= 3 && contains_vowel(std::string_view(w).substr(0, w.size() - 2))) {
                w.pop_back();
            }
        }
    }

    void step1b() {
        const Rule* rule = longest_match(w, step1b_rules);
        if (!rule) {
            return;
        }
        const std::size_t len = rule->suffix.size();
        if (rule->suffix.starts_with("eed")) {
            if (in_r1(len)) {
                replace_suffix(w, len, "ee");
            }
            return;
        }
        if (!contains_vowel(std::string_view(w).substr(0, w.size() - len))) {
            return;
        }
        w.resize(w.size() - len);
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += 'e';
        } else if (ends_double(w)) {
            w.pop_back();
        } else if (r1 >= w.size() && ends_short_syllable(w)) {
            w += 'e';
        }
    }

    void step1c() {
        const std::size_t n = w.size();
        if (n >= 3 && (w[n - 1] == 'y' || w[n - 1] == 'Y') && !is_vowel(w[n - 2])) {
            w[n - 1] = 'i';
        }
    }

    void step2() {
        const Rule* rule = longest_match(w, step2_rules);
        if (!rule || !in_r1(rule->suffix.size())) {
            return;
        }
        const std::size_t len = rule->suffix.size();
        const char before = w.size() > len ? w[w.size() - len - 1] : '\0';
        if (rule->suffix == "ogi" && before != 'l') {
            return;
        }
        if (rule->suffix == "li" && std::string_view("cdeghkmnrt").find(before) == std::string_view::npos) {
            return;
        }
        replace_suffix(w, len, rule->replacement);
    }

    void step3() {
        const Rule* rule = longest_match(w, step3_rules);
        if (!rule || !in_r1(rule->suffix.size())) {
            return;
        }
        if (rule->suffix == "ative" && !in_r2(rule->suffix.size())) {
            return;
        }
        replace_suffix(w, rule->suffix.size(), rule->replacement);
    }

    void step4() {
        const Rule* rule = longest_match(w, step4_rules);
        if (!rule || !in_r2(rule->suffix.size())) {
            return;
        }
        const std::size_t len = rule->suffix.size();
        if (rule->suffix == "ion") {
            const char before = w.size() > len ? w[w.size() - len - 1] : '\0';
            if (before != 's' && before != 't') {
                return;
            }
        }
        w.resize(w.size() - len);
    }

    void step5() {
        if (ends_with(w, "e")) {
            if (in_r2(1)
                || (in_r1(1) && !ends_short_syllable(std::string_view(w).substr(0, w.size() - 1)))) {
                w.pop_back();
            }
        } else if (ends_with(w, "l")) {
            if (in_r2(1) && w.size() >= 2 && w[w.size() - 2] == 'l') {
                w.pop_back();
            }
        }
    }

    void postlude() { std::replace(w.begin(), w.end(), 'Y', 'y'); }
};

} // namespace detail

/// Stems one lowercase token.
inline std::string stem(std::string_view word) {
    if (word.size() <= 2) {
        return std::string(word);
    }
    for (const auto& [form, result] : detail::exceptional) {
        if (word == form) {
            return std::string(result);
        }
    }

    detail::Stemmer s{std::string(word)};
    s.prelude();
    s.mark_regions();
    s.step0();
    s.step1a();
    if (std::find(detail::invariant_after_1a.begin(), detail::invariant_after_1a.end(), s.w)
        != detail::invariant_after_1a.end()) {
        return s.w;
    }
    s.step1b();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5();
    s.postlude();
    return s.w;
}

} // namespace ctaclust::porter2

#endif
