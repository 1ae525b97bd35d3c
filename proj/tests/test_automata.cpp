#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "rederiv/automata.hpp"
#include "rederiv/oracle.hpp"
#include "rederiv/parse.hpp"
#include "testutil.hpp"

using namespace rederiv;

namespace {

std::set<std::string> accepted_upto(const Dfa& d,
                                    const std::vector<char>& alphabet,
                                    std::size_t n) {
  std::set<std::string> out;
  for (const std::string& w : testutil::words_upto(alphabet, n))
    if (run(d, w)) out.insert(w);
  return out;
}

}  // namespace

TEST_CASE("compilation by iterated derivatives") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  SUBCASE("the classic suffix language needs exactly four states") {
    Dfa d = compile(parse("(a+b)*abb", reg, pool), reg, pool);
    CHECK(d.states.size() == 4);
    CHECK(d.start == 0);
    CHECK(run(d, "abb"));
    CHECK(run(d, "aabb"));
    CHECK(run(d, "babb"));
    CHECK(run(d, "ababb"));
    CHECK_FALSE(run(d, ""));
    CHECK_FALSE(run(d, "ab"));
    CHECK_FALSE(run(d, "abba"));
  }

  SUBCASE("a Hamming ball compiles and accepts exactly the ball") {
    Dfa d = compile(parse("hamming[1](ab)", reg, pool), reg, pool);
    CHECK(accepted_upto(d, reg.alphabet(), 2) ==
          std::set<std::string>{"aa", "ab", "bb"});
  }

  SUBCASE("matching-only operators are rejected with their name") {
    try {
      compile(parse("shclose(ab)", reg, pool), reg, pool);
      FAIL("expected capability_error");
    } catch (const capability_error& e) {
      CHECK(e.op == "shclose");
    }
    CHECK_THROWS_AS(compile(parse("lquot(a, b*)", reg, pool), reg, pool),
                    capability_error);
    // Nested occurrences are found too.
    CHECK_THROWS_AS(compile(parse("a+shclose(b)*", reg, pool), reg, pool),
                    capability_error);
  }

  SUBCASE("the state cap throws rather than diverging") {
    try {
      compile(parse("abab", reg, pool), reg, pool, 2);
      FAIL("expected state_cap_error");
    } catch (const state_cap_error& e) {
      CHECK(e.cap == 2);
    }
  }

  SUBCASE("runs reject symbols outside the alphabet") {
    Dfa d = compile(parse("a*", reg, pool), reg, pool);
    CHECK(run(d, ""));
    CHECK_THROWS_AS((void)run(d, "ax"), std::invalid_argument);
  }

  SUBCASE("every state is a derivative of the start expression") {
    ExprId e = parse("hamming[1](ab)+b*a", reg, pool);
    Dfa d = compile(e, reg, pool);
    std::set<ExprId> seen(d.states.begin(), d.states.end());
    for (const std::string& w : testutil::words_upto(reg.alphabet(), 5))
      CHECK(seen.count(derive_word(w, e, reg, pool)) == 1);
  }
}

TEST_CASE("equivalence with shortest counterexamples") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  auto eq = [&](const std::string& l, const std::string& r) {
    return equiv(parse(l, reg, pool), parse(r, reg, pool), reg, pool);
  };

  CHECK(eq("ab+ab", "ab").equivalent);
  CHECK(eq("a(b+a)", "ab+aa").equivalent);
  CHECK(eq("tilde(a)", "a+@e").equivalent);
  CHECK(eq("hamming[0](ab)", "ab").equivalent);
  CHECK(eq("!!(a*b)", "a*b").equivalent);

  EquivResult r = eq("a*", "a*a");
  CHECK_FALSE(r.equivalent);
  CHECK(r.counterexample == "");
  CHECK(r.accepting_side == Side::First);

  r = eq("ab", "ab+b");
  CHECK_FALSE(r.equivalent);
  CHECK(r.counterexample == "b");
  CHECK(r.accepting_side == Side::Second);

  // Length-minimal, ties broken by symbol order.
  r = eq("a", "b");
  CHECK_FALSE(r.equivalent);
  CHECK(r.counterexample == "a");
  CHECK(r.accepting_side == Side::First);

  CHECK_THROWS_AS(eq("shclose(ab)", "a*"), capability_error);

  SUBCASE("relation sanity and counterexample verification") {
    testutil::Gen gen(reg, 55667);
    for (int i = 0; i < 40; ++i) {
      ExprId e1 = normalize(*gen.sized(3, 14, /*tier_a_only=*/true), pool);
      ExprId e2 = normalize(*gen.sized(3, 14, /*tier_a_only=*/true), pool);

      CHECK(equiv(e1, e1, reg, pool).equivalent);

      // id and a radius-zero ball are language-preserving wrappers, which
      // gives a guaranteed-equivalent triple for transitivity.
      ExprId w1 = normalize(*raw_op("id", {to_raw(e1, pool)}), pool);
      ExprId w2 = normalize(
          *raw_op(reg.resolve("hamming", {OpParam::num(0)}).name,
                  {to_raw(e1, pool)}),
          pool);
      CHECK(equiv(e1, w1, reg, pool).equivalent);
      CHECK(equiv(w1, w2, reg, pool).equivalent);
      CHECK(equiv(e1, w2, reg, pool).equivalent);

      EquivResult fwd = equiv(e1, e2, reg, pool);
      EquivResult bwd = equiv(e2, e1, reg, pool);
      CHECK(fwd.equivalent == bwd.equivalent);
      if (!fwd.equivalent) {
        CHECK(fwd.counterexample == bwd.counterexample);
        CHECK(fwd.accepting_side != bwd.accepting_side);
        ExprId acc = fwd.accepting_side == Side::First ? e1 : e2;
        ExprId rej = fwd.accepting_side == Side::First ? e2 : e1;
        CHECK(matches(acc, fwd.counterexample, reg, pool));
        CHECK_FALSE(matches(rej, fwd.counterexample, reg, pool));
      }
    }
  }
}

TEST_CASE("word enumeration") {
  ExprPool pool;

  SUBCASE("over a three-letter alphabet") {
    OperatorRegistry reg =
        build_registry(DefinitionsFile::parse_text("alphabet: a b c\n"));
    CHECK(enumerate_words(parse("prefixes(abc)", reg, pool), reg, pool, 3) ==
          std::vector<std::string>{"", "a", "ab", "abc"});
  }

  SUBCASE("falls back to derivatives when no automaton exists") {
    OperatorRegistry reg = testutil::test_registry();
    CHECK(enumerate_words(parse("shclose(ab)", reg, pool), reg, pool, 4) ==
          std::vector<std::string>{"", "ab", "aabb", "abab"});
    CHECK(enumerate_words(parse("@0", reg, pool), reg, pool, 5).empty());
    CHECK(enumerate_words(parse("a+b", reg, pool), reg, pool, 1) ==
          std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("DOT rendering is stable") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  CHECK(to_dot(compile(parse("@0", reg, pool), reg, pool), pool) ==
        "digraph dfa {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  start [shape=none, label=\"\"];\n"
        "  start -> s0;\n"
        "  s0 [label=\"@0\"];\n"
        "  s0 -> s0 [label=\"a,b\"];\n"
        "}\n");

  Dfa one = compile(parse("a", reg, pool), reg, pool);
  CHECK(one.states.size() == 3);  // a, then @e, then the sink

  CHECK(to_dot(compile(parse("(a+b)*abb", reg, pool), reg, pool), pool) ==
        "digraph dfa {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  start [shape=none, label=\"\"];\n"
        "  start -> s0;\n"
        "  s0 [label=\"(a+b)*abb\"];\n"
        "  s1 [label=\"(@e+(a+b)*a)bb\"];\n"
        "  s2 [label=\"(@e+(a+b)*ab)b\"];\n"
        "  s3 [shape=doublecircle, label=\"@e+(a+b)*abb\"];\n"
        "  s0 -> s1 [label=\"a\"];\n"
        "  s0 -> s0 [label=\"b\"];\n"
        "  s1 -> s1 [label=\"a\"];\n"
        "  s1 -> s2 [label=\"b\"];\n"
        "  s2 -> s1 [label=\"a\"];\n"
        "  s2 -> s3 [label=\"b\"];\n"
        "  s3 -> s1 [label=\"a\"];\n"
        "  s3 -> s0 [label=\"b\"];\n"
        "}\n");
}

TEST_CASE("minimization") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;

  // ab is already inside a*b, so three derivative states collapse into one.
  ExprId e = parse("a*b+ab", reg, pool);
  Dfa d = compile(e, reg, pool);
  CHECK(d.states.size() == 5);
  Dfa m = minimize(d);
  CHECK(m.states.size() == 3);
  for (const std::string& w : testutil::words_upto(reg.alphabet(), 5))
    CHECK(run(m, w) == run(d, w));
  CHECK(minimize(m).states.size() == 3);

  // An already-minimal automaton is untouched.
  Dfa four = compile(parse("(a+b)*abb", reg, pool), reg, pool);
  CHECK(minimize(four).states.size() == 4);
}

TEST_CASE("random corpus: automata agree with the oracle") {
  OperatorRegistry reg = testutil::test_registry();
  ExprPool pool;
  testutil::Gen gen(reg, 777);

  for (int i = 0; i < 60; ++i) {
    ExprId e = normalize(*gen.sized(3, 16, /*tier_a_only=*/true), pool);
    Dfa d = compile(e, reg, pool);
    oracle::Slice s = oracle::slice(e, 4, reg, pool);
    CHECK(accepted_upto(d, reg.alphabet(), 4) == s.words);
    for (const std::string& w : enumerate_words(e, reg, pool, 4))
      CHECK(s.contains(w));
  }
}
