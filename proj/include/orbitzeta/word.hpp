#pragma once

// Reduced words in a free group of rank r.
//
// Letters are 1..r for generators and -1..-r for their inverses. The fixed
// total order used for canonical forms is a < a^-1 < b < b^-1 < ...

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbitzeta {

constexpr int letter_key(int letter) noexcept { return 2 * ((letter < 0 ? -letter : letter) - 1) + (letter < 0); }
constexpr int letter_from_key(int key) noexcept { return key % 2 == 0 ? key / 2 + 1 : -(key / 2 + 1); }

class Word {
 public:
  Word() = default;
  // Throws invalid_argument when the letters are not freely reduced.
  explicit Word(std::vector<int> letters);

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  bool is_cyclically_reduced() const noexcept;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& x, const Word& y);

 private:
  std::vector<int> letters_;
};

// Free reduction of an arbitrary letter sequence.
Word reduce(const std::vector<int>& letters);
Word concat(const Word& u, const Word& v);

// "aBc": lowercase for generators, uppercase for inverses. Rank <= 26.
std::string to_string(const Word& w);
Word parse_word(std::string_view text);

Word cyclically_reduce(const Word& w);

// Cyclically reduces, then picks the least rotation in the letter order.
// Throws empty_word on the empty word (or one that reduces away).
Word canonical_form(const Word& w);

// w = root^k with k maximal. Requires a cyclically reduced, nonempty word.
std::pair<Word, int> primitive_root(const Word& w);

// Least rotation by letter key, for an already cyclically reduced sequence of
// keys. Shared by the enumeration kernels.
void least_rotation_keys(const int* keys, std::size_t n, int* out);

}  // namespace orbitzeta
