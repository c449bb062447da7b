#include "orbitzeta/word.hpp"

#include <algorithm>
#include <cctype>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] == 0) fail(ErrorCode::invalid_argument, "letter 0 is not a generator");
    if (i > 0 && letters_[i] == -letters_[i - 1])
      fail(ErrorCode::invalid_argument, "word is not freely reduced");
  }
}

Word Word::inverse() const {
  std::vector<int> inv(letters_.rbegin(), letters_.rend());
  for (int& x : inv) x = -x;
  return Word(std::move(inv));
}

bool Word::is_cyclically_reduced() const noexcept {
  return letters_.size() <= 1 || letters_.front() != -letters_.back();
}

std::strong_ordering operator<=>(const Word& x, const Word& y) {
  return std::lexicographical_compare_three_way(
      x.letters_.begin(), x.letters_.end(), y.letters_.begin(), y.letters_.end(),
      [](int p, int q) { return letter_key(p) <=> letter_key(q); });
}

Word reduce(const std::vector<int>& letters) {
  std::vector<int> stack;
  stack.reserve(letters.size());
  for (int x : letters) {
    if (x == 0) fail(ErrorCode::invalid_argument, "letter 0 is not a generator");
    if (!stack.empty() && stack.back() == -x)
      stack.pop_back();
    else
      stack.push_back(x);
  }
  return Word(std::move(stack));
}

Word concat(const Word& u, const Word& v) {
  std::vector<int> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return reduce(all);
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (int x : w.letters()) {
    int g = x < 0 ? -x : x;
    if (g > 26) fail(ErrorCode::invalid_argument, "word text format supports rank <= 26");
    s.push_back(static_cast<char>((x > 0 ? 'a' : 'A') + g - 1));
  }
  return s;
}

Word parse_word(std::string_view text) {
  std::vector<int> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch >= 'a' && ch <= 'z')
      letters.push_back(ch - 'a' + 1);
    else if (ch >= 'A' && ch <= 'Z')
      letters.push_back(-(ch - 'A' + 1));
    else
      fail(ErrorCode::format_error, std::string("invalid letter '") + ch + "' in word");
  }
  return Word(std::move(letters));
}

Word cyclically_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t lo = 0, hi = l.size();
  while (hi - lo >= 2 && l[lo] == -l[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(std::vector<int>(l.begin() + static_cast<std::ptrdiff_t>(lo),
                               l.begin() + static_cast<std::ptrdiff_t>(hi)));
}

void least_rotation_keys(const int* keys, std::size_t n, int* out) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      int x = keys[(r + i) % n];
      int y = keys[(best + i) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = keys[(best + i) % n];
}

Word canonical_form(const Word& w) {
  Word c = cyclically_reduce(w);
  if (c.empty()) fail(ErrorCode::empty_word, "canonical form of the trivial word");
  std::vector<int> keys(c.size()), rotated(c.size());
  std::transform(c.letters().begin(), c.letters().end(), keys.begin(), letter_key);
  least_rotation_keys(keys.data(), keys.size(), rotated.data());
  std::transform(rotated.begin(), rotated.end(), rotated.begin(), letter_from_key);
  return Word(std::move(rotated));
}

std::pair<Word, int> primitive_root(const Word& w) {
  if (w.empty()) fail(ErrorCode::empty_word, "primitive root of the trivial word");
  if (!w.is_cyclically_reduced()) fail(ErrorCode::invalid_argument, "primitive root needs a cyclically reduced word");
  const auto& l = w.letters();
  std::vector<int> doubled(l);
  doubled.insert(doubled.end(), l.begin(), l.end());
  // First interior occurrence of w in ww is the period.
  auto it = std::search(doubled.begin() + 1, doubled.end(), l.begin(), l.end());
  auto period = static_cast<std::size_t>(it - doubled.begin());
  int k = static_cast<int>(l.size() / period);
  return {Word(std::vector<int>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(period))), k};
}

}  // namespace orbitzeta
