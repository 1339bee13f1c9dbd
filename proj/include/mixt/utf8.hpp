// Minimal UTF-8 and case handling for the scripts the toolkit deals with
// (Latin incl. Latin-1 and Extended-A, Greek, Cyrillic). Unknown codepoints
// are treated as caseless letters so that other scripts still tokenize.

#ifndef MIXT_UTF8_HPP
#define MIXT_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mixt::utf8 {

using codepoint = std::uint32_t;

// Decodes the codepoint starting at byte offset i and advances i past it.
// Malformed bytes decode as U+FFFD and advance by one.
inline codepoint decode(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) { ++i; return b0; }
  std::size_t len = 0;
  codepoint cp = 0;
  if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
  else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
  else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
  else { ++i; return 0xFFFD; }
  if (i + len > s.size()) { ++i; return 0xFFFD; }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) { ++i; return 0xFFFD; }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

inline void encode(codepoint cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_digit(codepoint cp) { return cp >= '0' && cp <= '9'; }

inline bool is_upper(codepoint cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;    // Latin-1
  if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 0;       // Latin Ext-A pairs
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 1;
  if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 0;
  if (cp == 0x178) return true;                               // Y with diaeresis
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) == 1;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return true; // Greek
  if (cp >= 0x400 && cp <= 0x42F) return true;                // Cyrillic
  return false;
}

inline bool is_lower(codepoint cp) {
  if (cp >= 'a' && cp <= 'z') return true;
  if (cp >= 0xDF && cp <= 0xFF && cp != 0xF7) return true;
  if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 1;
  if (cp == 0x138) return true;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 0;
  if (cp == 0x149) return true;
  if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 1;
  if (cp >= 0x179 && cp <= 0x17F) return (cp & 1) == 0 || cp == 0x17F;
  if (cp >= 0x3AC && cp <= 0x3CE) return true;
  if (cp >= 0x430 && cp <= 0x45F) return true;
  return false;
}

inline bool is_letter(codepoint cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  if (cp < 0x370) return is_upper(cp) || is_lower(cp) || cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  // Other scripts: anything in letter-bearing blocks counts as a caseless letter.
  return !(cp >= 0x2000 && cp <= 0x206F)      // general punctuation
      && !(cp >= 0x20A0 && cp <= 0x20CF)      // currency signs
      && cp != 0xFFFD;
}

inline codepoint to_lower(codepoint cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 0 ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 1 ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 0 ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) == 1 ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

// Lowercases a whole UTF-8 string.
inline std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) encode(to_lower(decode(s, i)), out);
  return out;
}

// First codepoint of a UTF-8 string, or 0 for empty input.
inline codepoint first(std::string_view s) {
  if (s.empty()) return 0;
  std::size_t i = 0;
  return decode(s, i);
}

// Codepoints of a UTF-8 string.
inline std::vector<codepoint> points(std::string_view s) {
  std::vector<codepoint> out;
  std::size_t i = 0;
  while (i < s.size()) out.push_back(decode(s, i));
  return out;
}

}  // namespace mixt::utf8

#endif
