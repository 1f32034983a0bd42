#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gkit/dsl.hpp"
#include "gkit/json_io.hpp"

using namespace gkit;

namespace {

const char* kHeader = "base { p = 2; pbasis = [t]; }\nring A = unramified(2);\n";

struct Outcome {
  int status;
  std::vector<Json> docs;
  std::string raw;
};

Outcome run_text(const std::string& src, SessionConfig config = {}) {
  std::ostringstream out;
  const int status = run_source(src, config, out);
  Outcome r{status, {}, out.str()};
  std::istringstream lines(r.raw);
  std::string line;
  while (std::getline(lines, line)) r.docs.push_back(Json::parse(line));
  return r;
}

std::string worked_example() {
  std::ifstream in(std::string(GKIT_SOURCE_DIR) + "/scripts/worked_example.gk");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string last_error(const Outcome& r) {
  if (r.docs.empty() || !r.docs.back().contains("error")) return "";
  return r.docs.back()["error"];
}

}  // namespace

TEST(Parse, MinimalScript) {
  const Script s = Script::parse("base { p = 2; pbasis = [t]; }");
  ASSERT_EQ(s.statements.size(), 1u);
  EXPECT_EQ(s.statements[0].kind, Statement::Kind::Base);
  EXPECT_EQ(s.statements[0].pbasis, std::vector<std::string>{"t"});
}

TEST(Parse, ErrorCarriesPosition) {
  try {
    Script::parse("base { p = 2; pbasis = [t]; }\nring A = unramified();");
    FAIL() << "parse should fail";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 21);
  }
  const Outcome r = run_text("base { p = 2; pbasis = [t]; }\nring A = unramified();");
  EXPECT_EQ(r.status, 1);
  ASSERT_EQ(r.docs.size(), 1u);
  EXPECT_EQ(r.docs[0]["error"], "ParseError");
  EXPECT_EQ(r.docs[0]["line"], 2);
  EXPECT_EQ(r.docs[0]["column"], 21);
}

TEST(Parse, Declarations) {
  const Script s = Script::parse(worked_example());
  ASSERT_GE(s.statements.size(), 4u);
  EXPECT_EQ(s.statements[2].kind, Statement::Kind::Scheme);
  EXPECT_EQ(s.statements[2].vars, std::vector<std::string>{"x"});
  EXPECT_EQ(s.statements[3].name, "greenberg");
  EXPECT_EQ(s.statements[3].target, "X");
  EXPECT_EQ(s.statements[3].options.at("stage").text, "0");
}

TEST(Parse, UnresolvedReferences) {
  EXPECT_THROW(Script::parse("ring A = unramified(2);"), ParseError);
  try {
    Script::parse(std::string(kHeader) + "greenberg Y\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownIdentifier);
  }
  try {
    Script::parse(std::string(kHeader) + "scheme X over B { vars [x]; eqs [x]; }\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownIdentifier);
  }
}

TEST(Commands, WittAdd) {
  const Outcome r = run_text(std::string(kHeader) + "witt add (1,0) (1,0)\n");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.raw, "{\"result\":[\"0\",\"1\"]}\n");
}

TEST(Commands, WittCommands) {
  const Outcome r = run_text(std::string(kHeader) +
                         "witt mul (t, 1) (t, 0)\nwitt neg (1, 0)\nwitt f (t, 1)\nwitt v (t, 1)\n"
                         "witt teich t --length 3\nwitt ghost (t, 1) 1\n");
  ASSERT_EQ(r.status, 0) << r.raw;
  EXPECT_EQ(r.docs[0]["result"], Json({"t^2", "t^2"}));
  EXPECT_EQ(r.docs[1]["result"], Json({"1", "1"}));
  EXPECT_EQ(r.docs[2]["result"], Json({"t^2", "1"}));
  EXPECT_EQ(r.docs[3]["result"], Json({"0", "t", "1"}));
  EXPECT_EQ(r.docs[4]["result"], Json({"t", "0", "0"}));
  EXPECT_EQ(r.docs[5]["result"], "t^2");
}

TEST(Commands, CohenExtractRejectsNonLattice) {
  const Outcome r = run_text(std::string(kHeader) + "cohen extract (0,t)\n");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(last_error(r), "NotInCohen");
  EXPECT_EQ(r.docs.back()["command"], "cohen extract (0,t)");
}

TEST(Commands, CohenCommands) {
  const Outcome r = run_text(std::string(kHeader) +
                         "cohen extract (t, 1)\ncohen residue (t, 1)\ncohen embed (t) --level 2\n"
                         "cohen pdiv (0, 1)\ncohen add (1, 0) (1, 0)\n");
  ASSERT_EQ(r.status, 0) << r.raw;
  EXPECT_EQ(r.docs[0]["result"]["n"], 1);
  EXPECT_EQ(r.docs[1]["result"], "t");
  EXPECT_EQ(r.docs[2]["result"]["coords"], Json({{"1,0", "t"}}));
  EXPECT_EQ(r.docs[3]["result"]["coords"], Json({{"0,0", "1"}}));
  EXPECT_EQ(r.docs[4]["result"]["coords"], Json({{"1,0", "1"}}));
}

TEST(Commands, WorkedExampleEmitsLevelZeroEquation) {
  const Outcome r = run_text(worked_example());
  ASSERT_EQ(r.status, 0) << r.raw;
  const Json& g = r.docs[0];
  EXPECT_EQ(g["stage"], 0);
  EXPECT_EQ(g["symbols"], Json({"z1.0.0.0", "z1.0.1.0", "z1.1.0.0"}));
  // a^2 + b^2 t + t with a = z1.0.0.0, b = z1.0.1.0.
  EXPECT_EQ(g["equations"][0], "t*z1.0.1.0^2 + z1.0.0.0^2 + t");
  EXPECT_EQ(r.docs[1]["stage"], 1);
  EXPECT_EQ(r.docs[1]["symbols"].size(), 6u);
  EXPECT_EQ(r.docs[2]["result"], Json({"0", "1", "t^2 + 1"}));
}

TEST(Commands, PointRoundTrip) {
  const Outcome r = run_text(worked_example());
  ASSERT_EQ(r.status, 0);
  // pull(0, 1, t^2 + 1) = teich(t) + 2 teich(t^2 + 1), the point pushed above.
  const Outcome back = run_text(std::string(kHeader) +
                            "scheme X over A { vars [x]; eqs [x^2 - teich(t)^2]; }\n"
                            "point push X teich(t) + 2*teich(t^2 + 1)\n");
  EXPECT_EQ(back.docs[0]["result"], r.docs[2]["result"]);
  const Outcome bad = run_text(std::string(kHeader) +
                           "scheme X over A { vars [x]; eqs [x^2 - teich(t)^2]; }\npoint push X teich(t^2)\n");
  EXPECT_EQ(last_error(bad), "NotASolution");
}

TEST(Commands, Units) {
  const Outcome r = run_text(
      "base { p = 3; pbasis = [t]; }\nring A = unramified(3);\n"
      "ring B = eisenstein(3, E = pi^2 - p);\n"
      "units ppow-solve 1 + 9*teich(t) --n 1\n"
      "units level 1 + 3*teich(t)\nunits level 1\n"
      "units ppow-solve 1 + pi^4*teich(t) --ring B --n 2\n");
  ASSERT_EQ(r.status, 0) << r.raw;
  EXPECT_EQ(r.docs[0]["verified"], true);
  EXPECT_EQ(r.docs[0]["n"], 1);
  EXPECT_EQ(r.docs[1]["level"], 1);
  EXPECT_EQ(r.docs[2]["level"], "inf");
  EXPECT_EQ(r.docs[3]["verified"], true);
  const Outcome low = run_text("base { p = 2; pbasis = [t]; }\nring A = unramified(3);\nunits ppow-solve 1 + 2*teich(t) --n 1\n");
  EXPECT_EQ(last_error(low), "LevelTooLow");
}

TEST(Commands, TypeErrors) {
  EXPECT_EQ(last_error(run_text(std::string(kHeader) + "elem f = t;\nelem u in A = f;\n")), "TypeMismatch");
  EXPECT_EQ(last_error(run_text(std::string(kHeader) + "units level t\n")), "TypeMismatch");
  EXPECT_EQ(last_error(run_text(std::string(kHeader) + "elem u in A = teich(t);\nwitt add (u, 0) (1, 0)\n")),
            "TypeMismatch");
  EXPECT_EQ(last_error(run_text(std::string(kHeader) + "witt add (s, 0) (1, 0)\n")), "UnknownIdentifier");
  EXPECT_EQ(last_error(run_text("base { p = 2; pbasis = [t]; }\nring B = eisenstein(2, E = pi^2 - 4);\n")),
            "NotEisenstein");
  EXPECT_EQ(last_error(run_text(std::string(kHeader) + "witt add (1,0) (1,0) --bogus 1\n")), "InvalidArgument");
}

TEST(Commands, ResourceLimitNamesCommand) {
  SessionConfig config;
  config.limits.symbol_cap = 2;
  const Outcome r = run_text(worked_example(), config);
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(last_error(r), "ResourceLimit");
  EXPECT_EQ(r.docs.back()["command"], "greenberg X --stage 0");
}

TEST(Commands, OutOption) {
  const auto path = std::filesystem::temp_directory_path() / "gkit_out_option.json";
  const Outcome r = run_text(std::string(kHeader) + "witt add (1,0) (1,0) --out \"" + path.string() + "\"\n");
  ASSERT_EQ(r.status, 0) << r.raw;
  EXPECT_TRUE(r.raw.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "{\"result\":[\"0\",\"1\"]}");
}

TEST(Commands, SelftestAllPass) {
  const Outcome r = run_text("selftest --seed 42\n");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.docs[0]["ok"], true);
  EXPECT_EQ(r.docs[0]["failed"], 0);
  EXPECT_GT(r.docs[0]["passed"].get<int>(), 100);
  EXPECT_EQ(r.docs[0]["seed"], 42);
}

TEST(Determinism, ByteIdenticalRuns) {
  EXPECT_EQ(run_text(worked_example()).raw, run_text(worked_example()).raw);
  EXPECT_EQ(run_text("selftest --seed 7\n").raw, run_text("selftest --seed 7\n").raw);
  SessionConfig par;
  par.jobs = 2;
  const std::string two = std::string(kHeader) + "scheme Y over A { vars [x, y]; eqs [x*y - 1, x^2 + teich(t)*y]; }\ngreenberg Y\n";
  EXPECT_EQ(run_text(two, par).raw, run_text(two).raw);
}

TEST(Fuzz, MalformedInputsGiveStructuredErrors) {
  const std::vector<std::string> corpus{
      "",
      "base",
      "base {",
      "base { p = 1; }",
      "base { p = 2; pbasis = [t; }",
      "base { pbasis = [t]; }",
      "base { p = 2; } base { p = 3; }",
      "ring A = unramified(2);",
      "base { p = 2; pbasis = [t]; } ring A = unramified(0);",
      "base { p = 2; pbasis = [t]; } ring A = eisenstein(2, E = 1);",
      "base { p = 2; pbasis = [t]; } ring A = eisenstein(2, E = pi^2 + pi);",
      "base { p = 2; pbasis = [t]; } witt add (1,0)",
      "base { p = 2; pbasis = [t]; } witt add (1,0) (1,0,0)",
      "base { p = 2; pbasis = [t]; } witt frob (1,0)",
      "base { p = 2; pbasis = [t]; } witt ghost (1,0) 5",
      "base { p = 2; pbasis = [t]; } witt add (1/0,0) (1,0)",
      "base { p = 2; pbasis = [t]; } cohen pdiv (1, 0)",
      "base { p = 2; pbasis = [t]; } cohen embed (1, 0) --level 1",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); elem u in A = teich(t)/2;",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); units level 2",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); elem u in A = coord(5, 0, t);",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); elem u in A = coord(0, 9, t);",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); elem u in A = frob(t);",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); scheme X over A { vars [x]; eqs [x/x]; }",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); scheme X over A { vars [x]; eqs [x]; } point pull X (1, 2, 3, 4)",
      "base { p = 2; pbasis = [t]; } ring A = unramified(2); scheme X over A { vars [x]; eqs [x]; } greenberg X --stage x",
      "base { p = 2; pbasis = [t]; etale = t; }",
      "base { p = 2; pbasis = [t]; etale = y^2; } witt add (y, 0) (1, 0)",
      "((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((1",
      "base { p = 2; pbasis = [t]; } witt add (t^999999, 0) (1, 0)",
      "\xff\xfe garbage \x01",
      "selftest --seed banana",
  };
  for (const auto& src : corpus) {
    SCOPED_TRACE(src);
    Outcome r;
    ASSERT_NO_THROW(r = run_text(src));
    if (r.status != 0) {
      ASSERT_FALSE(r.docs.empty());
      EXPECT_FALSE(last_error(r).empty());
      EXPECT_TRUE(r.docs.back().contains("message"));
    }
  }
}

TEST(Fuzz, SeededMutationsOfWorkedExample) {
  const std::string base = worked_example();
  const std::string alphabet = "(){}[];,=+-*/^ \nxtpiy0123z#-";
  std::mt19937_64 rng(2024);
  SessionConfig config;
  config.limits.monomial_cap = 2000;
  config.limits.symbol_cap = 200;
  for (int trial = 0; trial < 300; ++trial) {
    std::string src = base;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      const size_t pos = rng() % src.size();
      switch (rng() % 3) {
        case 0: src.erase(pos, 1); break;
        case 1: src.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: src[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    SCOPED_TRACE(src);
    Outcome r;
    ASSERT_NO_THROW(r = run_text(src, config));
    if (r.status != 0) {
      ASSERT_FALSE(r.docs.empty());
      EXPECT_FALSE(last_error(r).empty());
    }
  }
}
