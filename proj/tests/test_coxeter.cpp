// Word problem and graph recognition tests.  Class counts are cross-checked
// against an independent union-find closure over single rewrite steps.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numeric>
#include <random>

#include "lkrep/coxeter.hpp"

using namespace lkrep;

namespace {

// Independent oracle: connected components of the single-step rewrite graph
// over all words of the given length.
size_t count_classes_oracle(const CoxeterGraph& g, size_t len) {
  std::vector<Word> words;
  Word cur(len, 0);
  while (true) {
    words.push_back(cur);
    size_t k = 0;
    while (k < len && cur[k] == g.n - 1) cur[k++] = 0;
    if (k == len) break;
    ++cur[k];
  }
  std::map<Word, size_t> idx;
  for (size_t i = 0; i < words.size(); ++i) idx[words[i]] = i;
  std::vector<size_t> parent(words.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    for (size_t k = 0; k + 1 < len; ++k) {
      if (w[k] == w[k + 1]) continue;
      if (g.mij(w[k], w[k + 1]) == 2) {
        Word v = w;
        std::swap(v[k], v[k + 1]);
        unite(i, idx[v]);
      }
      if (k + 2 < len && g.mij(w[k], w[k + 1]) == 3 && w[k + 2] == w[k]) {
        Word v = w;
        v[k] = w[k + 1];
        v[k + 1] = w[k];
        v[k + 2] = w[k + 1];
        unite(i, idx[v]);
      }
    }
  }
  std::set<size_t> roots;
  for (size_t i = 0; i < words.size(); ++i) roots.insert(find(i));
  return roots.size();
}

size_t count_at_length(const std::vector<WordClass>& classes, size_t len) {
  size_t c = 0;
  for (const auto& cl : classes)
    if (cl.length() == len) ++c;
  return c;
}

}  // namespace

TEST_CASE("graph validation") {
  REQUIRE_THROWS_AS(build_graph({{1, 4}, {4, 1}}), Error);
  REQUIRE_THROWS_AS(build_graph({{1, 2}, {3, 1}}), Error);
  REQUIRE_THROWS_AS(build_graph({{2, 2}, {2, 2}}), Error);
  CoxeterGraph g = build_graph({{1, 3}, {3, 1}});
  REQUIRE(g.n == 2);
  REQUIRE(g.adjacent(0, 1));
}

TEST_CASE("named graphs match the standard plates") {
  CoxeterGraph a5 = named_graph("A", 5);
  REQUIRE(a5.n == 5);
  for (int i = 0; i < 4; ++i) REQUIRE(a5.mij(i, i + 1) == 3);
  REQUIRE(a5.mij(0, 2) == 2);

  CoxeterGraph d4 = named_graph("D", 4);
  // Branch vertex is plate label 2, index 1 here.
  REQUIRE(d4.neighbors(1) == std::vector<int>({0, 2, 3}));
  REQUIRE(d4.mij(2, 3) == 2);

  CoxeterGraph e6 = named_graph("E6", 0);
  REQUIRE(e6.neighbors(3) == std::vector<int>({1, 2, 4}));
  REQUIRE(e6.neighbors(0) == std::vector<int>({2}));

  CoxeterGraph at2 = named_graph("Atilde", 2);
  REQUIRE(at2.n == 3);
  REQUIRE(at2.adjacent(0, 1));
  REQUIRE(at2.adjacent(1, 2));
  REQUIRE(at2.adjacent(2, 0));

  CoxeterGraph dt4 = named_graph("Dtilde", 4);
  REQUIRE(dt4.n == 5);
  REQUIRE(dt4.neighbors(2) == std::vector<int>({0, 1, 3, 4}));

  CoxeterGraph et8 = named_graph("Etilde8", 0);
  REQUIRE(et8.n == 9);
  REQUIRE(et8.neighbors(0) == std::vector<int>({8}));

  REQUIRE_THROWS_AS(named_graph("B", 3), Error);
  REQUIRE_THROWS_AS(named_graph("A", 0), Error);
  REQUIRE_THROWS_AS(named_graph("D", 3), Error);
}

TEST_CASE("word parsing and printing") {
  REQUIRE(parse_word("010") == Word({0, 1, 0}));
  REQUIRE(parse_word("0.1.0") == Word({0, 1, 0}));
  REQUIRE(parse_word("10.2") == Word({10, 2}));
  REQUIRE(word_str({0, 1, 0}) == "010");
  REQUIRE(word_str({10, 2}) == "10.2");
  REQUIRE(parse_word(word_str({11, 0, 3})) == Word({11, 0, 3}));
  REQUIRE_THROWS_AS(parse_word("0a1"), Error);
}

TEST_CASE("word classes on the smallest braid monoid") {
  CoxeterGraph a2 = named_graph("A", 2);
  WordClass c = word_class(a2, {0, 1, 0});
  REQUIRE(c.members == std::vector<Word>({{0, 1, 0}, {1, 0, 1}}));
  REQUIRE(c.representative == Word({0, 1, 0}));
  REQUIRE(initial_set(a2, {0, 1, 0}) == std::set<int>({0, 1}));
  REQUIRE(initial_set(a2, {0, 1}) == std::set<int>({0}));
  REQUIRE(words_equal(a2, {0, 1, 0}, {1, 0, 1}));
  REQUIRE_FALSE(words_equal(a2, {0, 1}, {1, 0}));

  CoxeterGraph a3 = named_graph("A", 3);
  REQUIRE(words_equal(a3, {0, 2}, {2, 0}));
  // Both defining relations interact: 0102 ~ 1012 ~ 0120.
  REQUIRE(words_equal(a3, {0, 1, 0, 2}, {1, 0, 1, 2}));
  REQUIRE(words_equal(a3, {0, 1, 0, 2}, {0, 1, 2, 0}));
  REQUIRE(word_class(a3, {0, 1, 0, 2}).members.size() == 3);
  REQUIRE_FALSE(words_equal(a3, {0, 1, 0, 2}, {1, 0, 2, 1}));
}

TEST_CASE("cap aborts oversized closures") {
  CoxeterGraph a3 = named_graph("A", 3);
  Word w;
  for (int k = 0; k < 4; ++k) {
    w.push_back(0);
    w.push_back(1);
    w.push_back(2);
  }
  REQUIRE_THROWS_AS(word_class(a3, w, 5), Error);
  try {
    word_class(a3, w, 5);
  } catch (const Error& e) {
    REQUIRE(e.code() == Err::CapExceeded);
  }
}

TEST_CASE("class counts match the rewrite-graph oracle") {
  CoxeterGraph a2 = named_graph("A", 2);
  auto classes = enumerate_classes(a2, 5);
  REQUIRE(count_at_length(classes, 0) == 1);
  REQUIRE(count_at_length(classes, 1) == 2);
  REQUIRE(count_at_length(classes, 2) == 4);
  REQUIRE(count_at_length(classes, 3) == 7);
  for (size_t len = 2; len <= 5; ++len)
    REQUIRE(count_at_length(classes, len) == count_classes_oracle(a2, len));

  CoxeterGraph a3 = named_graph("A", 3);
  auto c3 = enumerate_classes(a3, 4);
  for (size_t len = 1; len <= 4; ++len)
    REQUIRE(count_at_length(c3, len) == count_classes_oracle(a3, len));

  CoxeterGraph at2 = named_graph("Atilde", 2);
  auto ct = enumerate_classes(at2, 4);
  for (size_t len = 1; len <= 4; ++len)
    REQUIRE(count_at_length(ct, len) == count_classes_oracle(at2, len));

  // Representatives are pairwise inequivalent and lex-least in their class.
  for (const auto& cl : classes) {
    for (const Word& m : cl.members) REQUIRE(cl.representative <= m);
    REQUIRE(std::is_sorted(cl.members.begin(), cl.members.end()));
  }
}

TEST_CASE("initial sets are monotone along prefixes") {
  CoxeterGraph d4 = named_graph("D", 4);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> letter(0, 3);
  for (int iter = 0; iter < 200; ++iter) {
    Word w;
    for (int k = 0; k < 6; ++k) w.push_back(letter(rng));
    auto full = initial_set(d4, w);
    for (size_t cut = 1; cut < w.size(); ++cut) {
      Word prefix(w.begin(), w.begin() + cut);
      for (int i : initial_set(d4, prefix)) REQUIRE(full.count(i) == 1);
    }
  }
}

TEST_CASE("sphericity recognition agrees with direct enumeration") {
  auto check_all_subsets = [](const CoxeterGraph& g) {
    int n = g.n;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> J;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) J.push_back(i);
      bool rec = is_spherical(g, J);
      auto order = enumerate_weyl(g, J, 10000);
      REQUIRE(rec == order.has_value());
    }
  };
  check_all_subsets(named_graph("A", 4));
  check_all_subsets(named_graph("D", 4));
  check_all_subsets(named_graph("Atilde", 2));
  check_all_subsets(named_graph("Atilde", 3));
  check_all_subsets(named_graph("Dtilde", 4));
}

TEST_CASE("weyl group orders of the classical types") {
  REQUIRE(enumerate_weyl(named_graph("A", 3), {0, 1, 2}) == 24);
  REQUIRE(enumerate_weyl(named_graph("A", 5), {0, 1, 2, 3, 4}) == 720);
  REQUIRE(enumerate_weyl(named_graph("D", 4), {0, 1, 2, 3}) == 192);
  REQUIRE(enumerate_weyl(named_graph("D", 5), {0, 1, 2, 3, 4}) == 1920);
}

TEST_CASE("garside words lift the longest parabolic elements") {
  CoxeterGraph a2 = named_graph("A", 2);
  REQUIRE(garside_word(a2, {0, 1}) == Word({0, 1, 0}));
  REQUIRE(garside_word(a2, {1}) == Word({1}));

  CoxeterGraph a3 = named_graph("A", 3);
  REQUIRE(garside_word(a3, {0, 2}) == Word({0, 2}));
  REQUIRE(garside_word(a3, {0, 1, 2}).size() == 6);

  CoxeterGraph d4 = named_graph("D", 4);
  Word full = garside_word(d4, {0, 1, 2, 3});
  REQUIRE(full.size() == 12);
  // The lift is central up to the graph symmetry; at least check the square
  // of its length and that every generator divides it.
  for (int i = 0; i < 4; ++i) REQUIRE(initial_set(d4, full).count(i) == 1);

  CoxeterGraph at2 = named_graph("Atilde", 2);
  REQUIRE_THROWS_AS(garside_word(at2, {0, 1, 2}), Error);
}
