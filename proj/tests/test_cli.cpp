#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rederiv/cli.hpp"

using namespace rederiv;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("match") {
  CliRun r = cli({"match", "-e", "a*b", "-w", "aab"});
  CHECK(r.code == 0);
  CHECK(r.out == "accept\n");

  r = cli({"match", "-e", "a*b", "-w", "ba"});
  CHECK(r.code == 1);
  CHECK(r.out == "reject\n");

  r = cli({"match", "-e", "a*", "-w", "@e"});
  CHECK(r.code == 0);

  r = cli({"match", "-e", "shclose(ab)", "-w", "abab"});
  CHECK(r.code == 0);
}

TEST_CASE("derive") {
  CliRun r = cli({"derive", "-e", "hamming[1](ab)", "-w", "a"});
  CHECK(r.code == 0);
  CHECK(r.out == "hamming[0](@0)+hamming[1](b)\n");

  r = cli({"derive", "-e", "lquot(b*, ab)", "-w", "a"});
  CHECK(r.out == "lquot(b*a,ab)\n");

  r = cli({"derive", "-e", "ab", "-w", "@e"});
  CHECK(r.out == "ab\n");
}

TEST_CASE("compile") {
  CliRun r = cli({"compile", "-e", "(a+b)*abb"});
  CHECK(r.code == 0);
  CHECK(r.out == "states: 4\n");

  r = cli({"compile", "-e", "a*b+ab"});
  CHECK(r.out == "states: 5\n");
  r = cli({"compile", "-e", "a*b+ab", "--minimize"});
  CHECK(r.out == "states: 3\n");

  r = cli({"compile", "-e", "@0", "--dot"});
  CHECK(r.out ==
        "digraph dfa {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  start [shape=none, label=\"\"];\n"
        "  start -> s0;\n"
        "  s0 [label=\"@0\"];\n"
        "  s0 -> s0 [label=\"a,b\"];\n"
        "}\n");

  r = cli({"compile", "-e", "ab", "--max-states", "1"});
  CHECK(r.code == 2);
  CHECK(r.err == "error: state cap exceeded (1)\n");

  r = cli({"compile", "-e", "shclose(ab)"});
  CHECK(r.code == 3);
  CHECK(r.err.find("shclose") != std::string::npos);
}

TEST_CASE("equiv") {
  CliRun r = cli({"equiv", "-e", "tilde(a)", "-f", "a+@e"});
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent\n");

  r = cli({"equiv", "-e", "a*", "-f", "a*a"});
  CHECK(r.code == 1);
  CHECK(r.out == "counterexample: @e\n");

  r = cli({"equiv", "-e", "ab", "-f", "ab+b"});
  CHECK(r.code == 1);
  CHECK(r.out == "counterexample: b\n");
}

TEST_CASE("enum") {
  CliRun r = cli({"enum", "-e", "tilde(a)", "--max-len", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "@e\na\n");

  r = cli({"enum", "-e", "@0", "--max-len", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());

  r = cli({"enum", "-e", "shclose(ab)", "--max-len", "4"});
  CHECK(r.out == "@e\nab\naabb\nabab\n");
}

TEST_CASE("fst") {
  CliRun r = cli({"fst", "--op", "hamming[1]"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "states: 2\n"
        "initial: hamming[1]\n"
        "transitions: 6\n"
        "hamming[1] a/a hamming[1]\n"
        "hamming[1] b/a hamming[0]\n"
        "hamming[1] b/b hamming[1]\n"
        "hamming[1] a/b hamming[0]\n"
        "hamming[0] a/a hamming[0]\n"
        "hamming[0] b/b hamming[0]\n");

  r = cli({"fst", "--op", "upclose", "--dot"});
  CHECK(r.out ==
        "digraph fst {\n"
        "  rankdir=LR;\n"
        "  node [shape=doublecircle];\n"
        "  start [shape=none, label=\"\"];\n"
        "  start -> s0;\n"
        "  s0 [label=\"upclose\"];\n"
        "  s0 -> s0 [label=\"@e/a\"];\n"
        "  s0 -> s0 [label=\"a/a\"];\n"
        "  s0 -> s0 [label=\"@e/b\"];\n"
        "  s0 -> s0 [label=\"b/b\"];\n"
        "}\n");

  r = cli({"fst", "--op", "xk[2,2]"});
  CHECK(r.code == 3);
  CHECK(r.err.find("xk[2,2]") != std::string::npos);

  r = cli({"fst", "--op", "nosuch"});
  CHECK(r.code == 2);
}

TEST_CASE("transduce") {
  CliRun r = cli({"transduce", "--op", "hamming[1]", "-w", "ab"});
  CHECK(r.code == 0);
  CHECK(r.out == "aa\nab\nbb\n");

  r = cli({"transduce", "--op", "upclose", "-w", "ab", "--max-out", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "ab\naab\naba\nabb\nbab\nINCOMPLETE\n");

  r = cli({"transduce", "--op", "id", "-w", "@e"});
  CHECK(r.out == "@e\n");
}

TEST_CASE("dspace") {
  CliRun r = cli({"dspace", "-e", "ab"});
  CHECK(r.code == 0);
  CHECK(r.out == "size: 4\n");

  r = cli({"dspace", "-e", "ab", "--enumerate"});
  CHECK(r.out == "size: 4\n@0\n@e\nb\n@e+b\n");

  r = cli({"dspace", "-e", "ab", "--check-closure", "--max-len", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size: 4\n") == 0);
  CHECK(r.out.find("PASS ab a\n") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = cli({"dspace", "-e", "(a+b)*(a+b)*(a+b)*(a+b)*(a+b)*", "--cap", "5"});
  CHECK(r.code == 2);
  CHECK(r.err == "error: enumeration exceeds cap (5)\n");

  r = cli({"dspace", "-e", "shclose(a)"});
  CHECK(r.code == 3);
}

TEST_CASE("oracle") {
  CliRun r = cli({"oracle", "-e", "lquot(@sigma-star, a)", "--max-len", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "@e\na\nINCOMPLETE\n");

  r = cli({"oracle", "-e", "a*", "--max-len", "2"});
  CHECK(r.out == "@e\na\naa\n");
}

TEST_CASE("session configuration") {
  // An inline alphabet makes c usable without a definitions file.
  CliRun r = cli({"equiv", "-e", "ab+ac", "-f", "a(b+c)", "--alphabet", "abc"});
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent\n");

  r = cli({"--alphabet", "abc", "enum", "-e", "prefixes(abc)", "--max-len", "3"});
  CHECK(r.out == "@e\na\nab\nabc\n");

  const char* path = "test_cli_defs.tmp";
  {
    std::ofstream f(path);
    f << "alphabet: a b c\nhom S: a -> b, b -> c, c -> a\n";
  }
  r = cli({"--defs", path, "transduce", "--op", "hom[S]", "-w", "abc"});
  CHECK(r.code == 0);
  CHECK(r.out == "bca\n");
  std::remove(path);

  r = cli({"--defs", "does_not_exist.defs", "match", "-e", "a", "-w", "a"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("diagnostics and exit codes") {
  CliRun r = cli({"match", "-e", "a++", "-w", "a"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
  CHECK(r.err.find("offset 2") != std::string::npos);

  r = cli({"match", "-e", "rquot(shclose(ab), ab)", "-w", "@e"});
  CHECK(r.code == 3);
  CHECK(r.err.find("rquot") != std::string::npos);

  r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Usage:") != std::string::npos);

  r = cli({});
  CHECK(r.code == 2);

  r = cli({"match", "-e", "a"});  // missing -w
  CHECK(r.code == 2);
}
