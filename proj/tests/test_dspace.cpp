#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "rederiv/automata.hpp"
#include "rederiv/derivation.hpp"
#include "rederiv/dspace.hpp"
#include "rederiv/parse.hpp"
#include "rederiv/pretty.hpp"
#include "testutil.hpp"

using namespace rederiv;

TEST_CASE("derivative-space enumeration of the base shapes") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  auto names = [&](const std::string& text) {
    std::vector<std::string> out;
    for (ExprId t :
         dplus_enumerate(parse(text, reg, pool), reg, pool, 1000))
      out.push_back(pretty(t, pool));
    return out;
  };

  CHECK(names("@0") == std::vector<std::string>{"@0"});
  CHECK(names("@e") == std::vector<std::string>{"@0"});
  CHECK(names("a") == std::vector<std::string>{"@0", "@e"});
  CHECK(names("ab") == std::vector<std::string>{"@0", "@e", "b", "@e+b"});
}

TEST_CASE("membership in the derivative space") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  auto in = [&](const std::string& t, const std::string& r) {
    return dplus_contains(parse(t, reg, pool), parse(r, reg, pool), reg, pool);
  };

  SUBCASE("base and regular cases") {
    CHECK(in("@0", "a"));
    CHECK(in("@e", "a"));
    CHECK_FALSE(in("a", "a"));
    CHECK(in("b", "ab"));
    CHECK(in("@e+b", "ab"));
    CHECK_FALSE(in("a", "ab"));
    CHECK(in("a*", "a*"));  // D(a, a*) = a*
    CHECK(in("(@e+(a+b)*a)bb", "(a+b)*abb"));
  }

  SUBCASE("derivatives land in the space") {
    ExprId r = parse("(a+b)*abb", reg, pool);
    ExprId t = derive_word("ab", r, reg, pool);
    CHECK(dplus_contains(t, r, reg, pool));
  }

  SUBCASE("enhanced heads carry rule prefixes and derived arguments") {
    CHECK(in("hom[H](b)", "hom[H](ab)"));
    CHECK(in("b hom[H](b)", "hom[H](ab)"));   // prefix left by the image of a
    CHECK(in("hamming[0](@0)+hamming[1](b)", "hamming[1](ab)"));
    CHECK(in("upclose(b)+upclose(ab)", "upclose(ab)"));
    // The head may be any linear operator of the registered family (the
    // space over-approximates), but the arguments must come from the
    // source's argument derivatives and the prefix from the rule
    // vocabulary.
    CHECK(in("hamming[2](b)", "hamming[1](ab)"));
    CHECK_FALSE(in("hamming[1](a*)", "hamming[1](ab)"));
    CHECK_FALSE(in("a hamming[1](b)", "hamming[1](ab)"));
  }

  SUBCASE("matching-only operators are refused") {
    CHECK_THROWS_AS((void)in("@0", "shclose(ab)"), capability_error);
  }

  SUBCASE("the enumeration cap fires instead of hanging") {
    CHECK_THROWS_AS(
        (void)dplus_enumerate(parse("(a+b)*(a+b)*(a+b)*(a+b)*(a+b)*", reg, pool),
                              reg, pool, 5),
        dspace_cap_error);
  }
}

TEST_CASE("closure of the space under derivation") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;
  std::vector<std::string> sample = testutil::words_upto(reg.alphabet(), 4);

  SUBCASE("reports") {
    ClosureReport rep =
        check_closure(parse("(a+b)*abb", reg, pool), reg, pool, sample);
    CHECK(rep.all_pass());
    CHECK(rep.text().find("FAIL") == std::string::npos);
    CHECK(rep.text().find("PASS (a+b)*abb a\n") == 0);

    CHECK(check_closure(parse("ab", reg, pool), reg, pool, sample).all_pass());
    CHECK(check_closure(parse("@0", reg, pool), reg, pool, sample).all_pass());
    CHECK(check_closure(parse("hamming[1](ab)+hom[H](a*)", reg, pool), reg,
                        pool, sample)
              .all_pass());
  }

  SUBCASE("random corpus, closure plus empty-language membership") {
    testutil::Gen gen(reg, 131313);
    for (int i = 0; i < 30; ++i) {
      ExprId r = normalize(*gen.sized(2, 12, /*tier_a_only=*/true), pool);
      CHECK(check_closure(r, reg, pool, sample).all_pass());
      // The empty language always belongs to the space.
      CHECK(dplus_contains(pool.null(), r, reg, pool));
    }
  }
}

TEST_CASE("predicate agrees with enumeration on small plain expressions") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;
  testutil::Gen gen(reg, 24680);

  for (int i = 0; i < 40; ++i) {
    ExprId r = normalize(*gen.plain(2), pool);
    std::vector<ExprId> space;
    try {
      space = dplus_enumerate(r, reg, pool, 4000);
    } catch (const dspace_cap_error&) {
      continue;
    }
    std::set<ExprId> in_space(space.begin(), space.end());
    for (ExprId t : space) CHECK(dplus_contains(t, r, reg, pool));
    // Probe with derivatives (members) and unrelated expressions.
    for (const std::string& w : testutil::words_upto(reg.alphabet(), 3)) {
      if (w.empty()) continue;
      ExprId t = derive_word(w, r, reg, pool);
      CHECK(dplus_contains(t, r, reg, pool));
      CHECK(in_space.count(t) == 1);
    }
    for (int j = 0; j < 5; ++j) {
      ExprId probe = normalize(*gen.plain(2), pool);
      CHECK(dplus_contains(probe, r, reg, pool) ==
            (in_space.count(probe) == 1));
    }
  }
}

TEST_CASE("compiled states live inside the derivative space") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;
  testutil::Gen gen(reg, 97531);

  for (int i = 0; i < 25; ++i) {
    ExprId r = normalize(*gen.sized(2, 10, /*tier_a_only=*/true), pool);
    Dfa d = compile(r, reg, pool);
    for (ExprId q : d.states) {
      if (q == r) continue;
      CHECK(dplus_contains(q, r, reg, pool));
    }
  }
}
