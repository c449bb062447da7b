#include <doctest.h>

#include <random>
#include <set>

#include "orbitzeta/error.hpp"
#include "orbitzeta/word.hpp"

using namespace orbitzeta;

namespace {

std::vector<int> random_reduced(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  std::vector<int> w;
  while (static_cast<int>(w.size()) < len) {
    int l = letter_from_key(pick(rng));
    if (!w.empty() && w.back() == -l) continue;
    w.push_back(l);
  }
  return w;
}

// Oracle: free reduction with an explicit stack.
std::vector<int> stack_reduce(const std::vector<int>& in) {
  std::vector<int> st;
  for (int l : in) {
    if (!st.empty() && st.back() == -l)
      st.pop_back();
    else
      st.push_back(l);
  }
  return st;
}

// Oracle: try every divisor of the length.
std::pair<std::vector<int>, int> divisor_root(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return {std::vector<int>(w.begin(), w.begin() + static_cast<long>(d)), static_cast<int>(n / d)};
  }
  return {w, 1};
}

}  // namespace

TEST_CASE("letter order") {
  CHECK(letter_key(1) == 0);
  CHECK(letter_key(-1) == 1);
  CHECK(letter_key(2) == 2);
  CHECK(letter_key(-2) == 3);
  for (int k = 0; k < 10; ++k) CHECK(letter_key(letter_from_key(k)) == k);
  CHECK(parse_word("a") < parse_word("A"));
  CHECK(parse_word("A") < parse_word("b"));
  CHECK(parse_word("b") < parse_word("B"));
}

TEST_CASE("word parsing and printing") {
  Word w = parse_word("aBc");
  CHECK(w.letters() == std::vector<int>{1, -2, 3});
  CHECK(to_string(w) == "aBc");
  CHECK(to_string(w.inverse()) == "CbA");
  CHECK_THROWS_AS(parse_word("aA"), Error);
  CHECK_THROWS_AS(parse_word("a1"), Error);
  CHECK_THROWS_AS(Word({1, -1}), Error);
}

TEST_CASE("reduction against the stack oracle") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> pick(0, 3), len(0, 20);
  for (int i = 0; i < 2000; ++i) {
    std::vector<int> raw;
    int n = len(rng);
    for (int j = 0; j < n; ++j) raw.push_back(letter_from_key(pick(rng)));
    CHECK(reduce(raw).letters() == stack_reduce(raw));
  }
}

TEST_CASE("canonical form examples") {
  CHECK(canonical_form(parse_word("abA")) == parse_word("b"));
  CHECK(canonical_form(parse_word("ba")) == parse_word("ab"));
  CHECK_THROWS_AS(canonical_form(Word()), Error);
  try {
    canonical_form(Word());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_word);
  }
}

TEST_CASE("canonical form is a conjugacy invariant") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> wl(1, 10), ul(0, 5);
  for (int i = 0; i < 2000; ++i) {
    Word w(random_reduced(rng, 2, wl(rng)));
    Word u(random_reduced(rng, 2, ul(rng)));
    Word conj = concat(concat(u, w), u.inverse());
    if (cyclically_reduce(w).empty()) continue;
    Word c = canonical_form(w);
    CHECK(canonical_form(conj) == c);
    CHECK(canonical_form(c) == c);
    // Every rotation of the cyclic reduction has the same canonical form,
    // and none is smaller.
    Word cr = cyclically_reduce(w);
    auto L = cr.letters();
    for (std::size_t r = 0; r < L.size(); ++r) {
      std::vector<int> rot(L.begin() + static_cast<long>(r), L.end());
      rot.insert(rot.end(), L.begin(), L.begin() + static_cast<long>(r));
      CHECK(canonical_form(Word(rot)) == c);
      CHECK(!(Word(rot) < c));
    }
  }
}

TEST_CASE("primitive root examples and divisor oracle") {
  auto [r1, k1] = primitive_root(parse_word("abab"));
  CHECK(r1 == parse_word("ab"));
  CHECK(k1 == 2);
  auto [r2, k2] = primitive_root(parse_word("ab"));
  CHECK(r2 == parse_word("ab"));
  CHECK(k2 == 1);
  CHECK_THROWS_AS(primitive_root(Word()), Error);

  // Every cyclically reduced word of length <= 8 in rank 2.
  std::vector<std::vector<int>> frontier{{}};
  int checked = 0;
  for (int len = 1; len <= 8; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int key = 0; key < 4; ++key) {
        int l = letter_from_key(key);
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    frontier = std::move(next);
    for (const auto& w : frontier) {
      if (w.front() == -w.back() && w.size() > 1) continue;
      auto [root, k] = primitive_root(Word(w));
      auto [oroot, ok] = divisor_root(w);
      CHECK(root.letters() == oroot);
      CHECK(k == ok);
      ++checked;
    }
  }
  CHECK(checked > 9000);
}

TEST_CASE("least rotation keys agrees with canonical form") {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    Word w = cyclically_reduce(Word(random_reduced(rng, 3, 12)));
    if (w.empty()) continue;
    std::vector<int> keys, out(w.size());
    for (int l : w.letters()) keys.push_back(letter_key(l));
    least_rotation_keys(keys.data(), keys.size(), out.data());
    std::vector<int> expect;
    Word c = canonical_form(w);
    for (int l : c.letters()) expect.push_back(letter_key(l));
    INFO(to_string(w));
    CHECK(out == expect);
  }
}
