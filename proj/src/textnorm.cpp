#include "dasr/textnorm.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <vector>

#include "dasr/error.hpp"

namespace dasr {

namespace {

#include "default_norm_config.inc"  // defines kDefaultNormTable

constexpr std::array<std::string_view, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
constexpr std::array<std::string_view, 10> kTens = {"",      "",      "twenty",  "thirty", "forty",
                                                    "fifty", "sixty", "seventy", "eighty", "ninety"};
constexpr std::array<std::string_view, 20> kOrdinalOnes = {
    "zeroth",     "first",      "second",      "third",      "fourth",
    "fifth",      "sixth",      "seventh",     "eighth",     "ninth",
    "tenth",      "eleventh",   "twelfth",     "thirteenth", "fourteenth",
    "fifteenth",  "sixteenth",  "seventeenth", "eighteenth", "nineteenth"};
constexpr std::array<std::string_view, 10> kOrdinalTens = {
    "",         "",          "twentieth", "thirtieth", "fortieth",
    "fiftieth", "sixtieth",  "seventieth", "eightieth", "ninetieth"};

constexpr std::uint32_t kMaxCardinal = 999'999;

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_letter(char c) { return is_lower(c) || is_upper(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string below_thousand(std::uint32_t n) {
  std::string out;
  if (n >= 100) {
    out = std::string(kOnes[n / 100]) + " hundred";
    n %= 100;
    if (n == 0) return out;
    out += ' ';
  }
  if (n < 20) return out + std::string(kOnes[n]);
  out += kTens[n / 10];
  if (n % 10) out += " " + std::string(kOnes[n % 10]);
  return out;
}

std::string spell_digits(std::string_view digits) {
  std::string out;
  for (char d : digits) {
    if (!out.empty()) out += ' ';
    out += kOnes[d - '0'];
  }
  return out;
}

// Longest currency symbol of `cfg` starting at text[i], or empty.
std::string_view currency_at(std::string_view text, std::size_t i, const NormConfig& cfg) {
  std::string_view best;
  for (const auto& [symbol, word] : cfg.currency_words) {
    if (symbol.size() > best.size() && text.substr(i, symbol.size()) == symbol) best = symbol;
  }
  return best;
}

bool ordinal_suffix_at(std::string_view text, std::size_t i) {
  if (i + 2 > text.size()) return false;
  const char a = to_lower(text[i]);
  const char b = to_lower(text[i + 1]);
  const bool suffix = (a == 's' && b == 't') || (a == 'n' && b == 'd') || (a == 'r' && b == 'd') ||
                      (a == 't' && b == 'h');
  return suffix && (i + 2 == text.size() || !is_letter(text[i + 2]));
}

// Output buffer that separates emitted words from surrounding text by one space.
class SpacedWriter {
 public:
  void put(char c) {
    if (pending_space_ && !is_space(c)) {
      if (!out_.empty() && !is_space(out_.back())) out_ += ' ';
    }
    pending_space_ = false;
    out_ += c;
  }
  void put_words(std::string_view words) {
    if (!out_.empty() && !is_space(out_.back())) out_ += ' ';
    out_ += words;
    pending_space_ = true;
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
  bool pending_space_ = false;
};

// ---------------------------------------------------------------------------
// Steps 1-3

std::string remove_tags(std::string_view text, const NormConfig& cfg) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char open = text[i];
    if (open == '[' || open == '<') {
      const char close = open == '[' ? ']' : '>';
      const auto end = text.find(close, i + 1);
      if (end != std::string_view::npos) {
        std::string inner = trim(text.substr(i + 1, end - i - 1));
        std::transform(inner.begin(), inner.end(), inner.begin(), to_lower);
        const std::string first = inner.substr(0, inner.find_first_of(" \t\r\n"));
        if (cfg.nonverbal_tags.count(open + inner + close) ||
            cfg.nonverbal_tags.count(open + first + close)) {
          out += ' ';
          i = end + 1;
          continue;
        }
      }
    }
    out += open;
    ++i;
  }
  return out;
}

// Latin-1 supplement U+00C0..U+00FF folded to lowercase ASCII; "" means punctuation.
constexpr std::array<std::string_view, 64> kLatin1Fold = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i",  "i",
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "y"};

std::string_view fold_codepoint(char32_t cp) {
  if (cp >= 0xC0 && cp <= 0xFF) return kLatin1Fold[cp - 0xC0];
  switch (cp) {
    case 0x0152: case 0x0153: return "oe";
    case 0x0160: case 0x0161: return "s";
    case 0x017D: case 0x017E: return "z";
    case 0x0178: return "y";
    case 0x0141: case 0x0142: return "l";
    case 0x2018: case 0x2019: case 0x02BC: return "'";
    case 0x2010: case 0x2011: return "-";
    default: return "";
  }
}

// Decodes one UTF-8 sequence at text[i]; returns its length (1 for invalid bytes).
std::size_t decode_utf8(std::string_view text, std::size_t i, char32_t& cp) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  std::size_t len = 0;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    cp = 0xFFFD;
    return 1;
  }
  if (i + len > text.size()) {
    cp = 0xFFFD;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      cp = 0xFFFD;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  return len;
}

std::string lowercase_fold(std::string_view text, const NormConfig& cfg) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (static_cast<unsigned char>(text[i]) < 0x80) {
      out += to_lower(text[i++]);
      continue;
    }
    if (auto sym = currency_at(text, i, cfg); !sym.empty()) {
      out += sym;
      i += sym.size();
      continue;
    }
    char32_t cp = 0;
    const std::size_t len = decode_utf8(text, i, cp);
    const auto folded = fold_codepoint(cp);
    out += folded.empty() ? std::string_view(" ") : folded;
    i += len;
  }
  return out;
}

std::string strip_punctuation(std::string_view text, const NormConfig& cfg) {
  std::string out;
  out.reserve(text.size() + 8);
  const auto at = [&](std::size_t k) -> char { return k < text.size() ? text[k] : ' '; };
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const char prev = out.empty() ? ' ' : out.back();
    if (is_lower(c)) {
      if (is_digit(prev)) {
        if (ordinal_suffix_at(text, i)) {
          out.append(text.substr(i, 2));
          i += 2;
          continue;
        }
        out += ' ';
      }
      out += c;
    } else if (is_digit(c)) {
      if (is_lower(prev)) out += ' ';
      out += c;
    } else if (c == '\'' || c == '-') {
      out += (i > 0 && is_lower(text[i - 1]) && is_lower(at(i + 1))) ? c : ' ';
    } else if (c == '.' || c == ',') {
      out += (i > 0 && is_digit(text[i - 1]) && is_digit(at(i + 1))) ? c : ' ';
    } else if (auto sym = currency_at(text, i, cfg); !sym.empty()) {
      out += ' ';
      out += sym;
      out += ' ';
      i += sym.size();
      continue;
    } else {
      out += ' ';
    }
    ++i;
  }
  return out;
}

bool is_word_token(std::string_view tok) {
  if (tok.empty()) return false;
  return std::all_of(tok.begin(), tok.end(),
                     [](char c) { return is_lower(c) || c == '\'' || c == '-'; });
}

std::set<std::string> number_vocabulary() {
  std::set<std::string> vocab = {"point", "hundred", "thousand"};
  for (std::uint32_t n = 0; n <= 100; ++n) {
    for (auto& t : split_ws(cardinal_words(n))) vocab.insert(t);
    if (n >= 1) {
      for (auto& t : split_ws(ordinal_words(n))) vocab.insert(t);
    }
  }
  return vocab;
}

void check_config(const NormConfig& cfg) {
  const auto numbers = number_vocabulary();
  auto fail = [](const std::string& msg) { throw ValueError("normalization table: " + msg); };
  auto check_output_tokens = [&](const std::string& text, const std::string& what) {
    const auto tokens = split_ws(text);
    if (tokens.empty()) fail(what + " has an empty expansion");
    for (const auto& t : tokens) {
      if (!is_word_token(t)) fail(what + " expands to non-word token \"" + t + "\"");
      if (cfg.abbreviations.count(t)) fail(what + " expands to abbreviation key \"" + t + "\"");
      if (cfg.nonverbal_tokens.count(t)) fail(what + " expands to non-verbal token \"" + t + "\"");
    }
  };
  for (const auto& [key, expansion] : cfg.abbreviations) {
    if (!is_word_token(key) || !is_lower(key.front()) || !is_lower(key.back())) {
      fail("abbreviation key \"" + key + "\" is not a normalized word");
    }
    if (numbers.count(key)) fail("abbreviation key \"" + key + "\" is a number word");
    check_output_tokens(expansion, "abbreviation \"" + key + "\"");
  }
  for (const auto& tok : cfg.nonverbal_tokens) {
    if (!is_word_token(tok)) fail("non-verbal token \"" + tok + "\" is not a normalized word");
    if (numbers.count(tok)) fail("non-verbal token \"" + tok + "\" is a number word");
  }
  for (const auto& tag : cfg.nonverbal_tags) {
    const bool bracketed = tag.size() >= 3 && ((tag.front() == '[' && tag.back() == ']') ||
                                               (tag.front() == '<' && tag.back() == '>'));
    if (!bracketed) fail("tag \"" + tag + "\" must be enclosed in [] or <>");
  }
  for (const auto& [symbol, word] : cfg.currency_words) {
    if (symbol.empty() || std::any_of(symbol.begin(), symbol.end(), [](char c) {
          return is_letter(c) || is_digit(c) || is_space(c) || c == '\'' || c == '-' ||
                 c == '.' || c == ',';
        })) {
      fail("currency symbol \"" + symbol + "\" must not contain letters, digits or separators");
    }
    check_output_tokens(word, "currency \"" + symbol + "\"");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Rule tables

NormConfig parse_norm_config(std::string_view text) {
  NormConfig cfg;
  enum class Section { none, meta, abbreviations, nonverbal_tokens, nonverbal_tags, currency };
  Section section = Section::none;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    if (stripped == "[meta]") { section = Section::meta; continue; }
    if (stripped == "[abbreviations]") { section = Section::abbreviations; continue; }
    if (stripped == "[nonverbal_tokens]") { section = Section::nonverbal_tokens; continue; }
    if (stripped == "[nonverbal_tags]") { section = Section::nonverbal_tags; continue; }
    if (stripped == "[currency]") { section = Section::currency; continue; }

    const auto where = "line " + std::to_string(lineno) + ": ";
    const auto tab = line.find('\t');
    std::string key = tab == std::string::npos ? stripped : trim(line.substr(0, tab));
    std::string value = tab == std::string::npos ? std::string() : trim(line.substr(tab + 1));
    switch (section) {
      case Section::none:
        throw ValueError(where + "entry outside of a section");
      case Section::meta:
        if (key == "version") cfg.version = value;
        break;
      case Section::abbreviations:
      case Section::currency:
        if (tab == std::string::npos || key.empty() || value.empty()) {
          throw ValueError(where + "expected token<TAB>expansion");
        }
        (section == Section::abbreviations ? cfg.abbreviations : cfg.currency_words)[key] = value;
        break;
      case Section::nonverbal_tokens:
        cfg.nonverbal_tokens.insert(key);
        break;
      case Section::nonverbal_tags:
        std::transform(key.begin(), key.end(), key.begin(), to_lower);
        cfg.nonverbal_tags.insert(key);
        break;
    }
  }
  check_config(cfg);
  return cfg;
}

NormConfig load_norm_config(const std::filesystem::path& path) {
  try {
    return parse_norm_config(read_file(path));
  } catch (const ValueError& e) {
    throw ValueError(path.string() + ": " + e.what());
  }
}

std::string write_norm_config(const NormConfig& cfg) {
  std::string out = "[meta]\nversion\t" + cfg.version + "\n\n[abbreviations]\n";
  for (const auto& [k, v] : cfg.abbreviations) out += k + "\t" + v + "\n";
  out += "\n[nonverbal_tokens]\n";
  for (const auto& t : cfg.nonverbal_tokens) out += t + "\n";
  out += "\n[nonverbal_tags]\n";
  for (const auto& t : cfg.nonverbal_tags) out += t + "\n";
  out += "\n[currency]\n";
  for (const auto& [k, v] : cfg.currency_words) out += k + "\t" + v + "\n";
  return out;
}

std::string norm_fingerprint(const NormConfig& cfg) {
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : write_norm_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const NormConfig& default_norm_config() {
  static const NormConfig cfg = parse_norm_config(kDefaultNormTable);
  return cfg;
}

// ---------------------------------------------------------------------------
// Numbers

std::string cardinal_words(std::uint32_t n) {
  if (n > kMaxCardinal) throw ContractError("cardinal_words: out of range");
  if (n < 1000) return below_thousand(n);
  std::string out = below_thousand(n / 1000) + " thousand";
  if (n % 1000) out += " " + below_thousand(n % 1000);
  return out;
}

std::string ordinal_words(std::uint32_t n) {
  if (n < 1 || n > 100) throw ContractError("ordinal_words: out of range");
  if (n == 100) return "one hundredth";
  if (n < 20) return std::string(kOrdinalOnes[n]);
  if (n % 10 == 0) return std::string(kOrdinalTens[n / 10]);
  return std::string(kTens[n / 10]) + " " + std::string(kOrdinalOnes[n % 10]);
}

std::string expand_numbers(std::string_view text, const NormConfig& cfg) {
  SpacedWriter out;
  std::size_t i = 0;
  const auto skip_spaces = [&](std::size_t k) {
    while (k < text.size() && (text[k] == ' ' || text[k] == '\t')) ++k;
    return k;
  };
  while (i < text.size()) {
    std::string_view prefix = currency_at(text, i, cfg);
    std::size_t start = i;
    if (!prefix.empty()) {
      start = skip_spaces(i + prefix.size());
      if (start >= text.size() || !is_digit(text[start])) prefix = {};
    }
    if (prefix.empty() && !is_digit(text[i])) {
      out.put(text[i++]);
      continue;
    }

    // integer part, with optional thousands groups
    std::size_t k = start;
    while (k < text.size() && is_digit(text[k])) ++k;
    std::string integer(text.substr(start, k - start));
    if (integer.size() <= 3) {
      while (k + 3 < text.size() && text[k] == ',' && is_digit(text[k + 1]) &&
             is_digit(text[k + 2]) && is_digit(text[k + 3]) &&
             (k + 4 >= text.size() || !is_digit(text[k + 4]))) {
        integer.append(text.substr(k + 1, 3));
        k += 4;
      }
    }
    std::string fraction;
    if (k + 1 < text.size() && text[k] == '.' && is_digit(text[k + 1])) {
      std::size_t f = k + 1;
      while (f < text.size() && is_digit(text[f])) ++f;
      fraction = std::string(text.substr(k + 1, f - k - 1));
      k = f;
    }

    std::string_view symbol = prefix;
    bool ordinal = false;
    if (symbol.empty()) {
      const std::size_t m = skip_spaces(k);
      if (m < text.size()) symbol = currency_at(text, m, cfg);
      if (!symbol.empty()) {
        k = m + symbol.size();
      } else if (fraction.empty() && ordinal_suffix_at(text, k)) {
        ordinal = true;
        k += 2;
      }
    }

    std::string words;
    const bool leading_zero = integer.size() > 1 && integer.front() == '0';
    if (leading_zero || integer.size() > 6) {
      words = spell_digits(integer);
    } else {
      const auto value = static_cast<std::uint32_t>(std::stoul(integer));
      words = (ordinal && value >= 1 && value <= 100) ? ordinal_words(value) : cardinal_words(value);
    }
    if (!fraction.empty()) words += " point " + spell_digits(fraction);
    if (!symbol.empty()) words += " " + cfg.currency_words.at(std::string(symbol));
    out.put_words(words);
    i = k;
  }
  return out.take();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> apply_token_rules(std::vector<std::string> in, const NormConfig& cfg) {
  std::vector<std::string> tokens;
  for (auto& tok : in) {
    if (auto it = cfg.abbreviations.find(tok); it != cfg.abbreviations.end()) {
      for (auto& t : split_ws(it->second)) tokens.push_back(std::move(t));
    } else {
      tokens.push_back(std::move(tok));
    }
  }
  std::erase_if(tokens, [&](const std::string& t) { return cfg.nonverbal_tokens.count(t) > 0; });
  return tokens;
}

}  // namespace

std::string normalize_text(std::string_view text, const NormConfig& cfg) {
  std::string s = remove_tags(text, cfg);
  s = lowercase_fold(s, cfg);
  s = strip_punctuation(s, cfg);
  s = expand_numbers(join(apply_token_rules(split_ws(s), cfg)), cfg);

  // leftovers: currency symbols without a number, separators between digits,
  // and apostrophes/hyphens left at a token edge once digits were split off
  for (auto& c : s) {
    if (!is_lower(c) && c != '\'' && c != '-') c = ' ';
  }
  std::vector<std::string> tokens;
  for (auto& tok : split_ws(s)) {
    const auto b = tok.find_first_not_of("'-");
    if (b == std::string::npos) continue;
    tokens.push_back(tok.substr(b, tok.find_last_not_of("'-") - b + 1));
  }
  return join(apply_token_rules(std::move(tokens), cfg));
}

NormalizedSegLst normalize_seglst_counted(const SegLst& s, const NormConfig& cfg) {
  std::vector<Segment> kept;
  kept.reserve(s.size());
  std::size_t dropped = 0;
  for (const auto& seg : s) {
    Segment copy = seg;
    copy.words = normalize_text(seg.words, cfg);
    if (copy.words.empty()) {
      ++dropped;
    } else {
      kept.push_back(std::move(copy));
    }
  }
  return {SegLst(std::move(kept)), dropped};
}

SegLst normalize_seglst(const SegLst& s, const NormConfig& cfg) {
  return normalize_seglst_counted(s, cfg).segments;
}

}  // namespace dasr
