#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output hatlab(const std::string& args, const std::string& env = "") {
  const std::string command = env + (env.empty() ? "" : " ") + HATLAB_CLI_PATH + " " + args + " 2>/dev/null";
  Output result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json json_of(const Output& o) { return nlohmann::json::parse(o.out); }

}  // namespace

TEST(CliRun, BlockModSumExample) {
  const Output o = hatlab("run --kind hnsa -m 3 -c 3 --strategy block_mod_sum:n=1 --assignment 0,1,2 --rule at_least:1");
  ASSERT_EQ(o.code, 0);
  const auto j = json_of(o);
  EXPECT_EQ(j["verdict"], 1);
  EXPECT_EQ(j["correct"], nlohmann::json::parse("[0]"));
}

TEST(CliRun, SumBroadcastTextNamesTheFront) {
  const Output o = hatlab(
      "run --kind hbsf -m 3 -c 2 --strategy sum_broadcast --assignment 0,1,0 --rule fewer_incorrect:2 --format text");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("verdict=1"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("incorrect=[front]"), std::string::npos) << o.out;
}

TEST(CliRun, SingleColorIsAllCorrect) {
  const Output o = hatlab("run --kind hnsa -m 2 -c 1 --strategy constant:0 --assignment 0,0 --rule at_least:2");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["incorrect"], nlohmann::json::array());
}

TEST(CliRun, CsvSchema) {
  const Output o = hatlab("run --kind hnsa -m 2 -c 2 --strategy constant:0 --assignment 0,1 --format csv");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "assignment,correct,incorrect,verdict\n0 1,1,1,1\n");
}

TEST(CliSweep, Examples) {
  const Output blocks = hatlab("sweep --kind hnsa -m 6 -c 3 --strategy block_mod_sum:n=2 --rule at_least:2");
  ASSERT_EQ(blocks.code, 0);
  EXPECT_EQ(json_of(blocks)["min_correct"], 2);
  EXPECT_EQ(json_of(blocks)["winning"], true);

  const Output constant = hatlab("sweep --kind hnsf -m 3 -c 2 --strategy constant:0 --rule at_least:1");
  EXPECT_EQ(constant.code, 1);
  EXPECT_EQ(json_of(constant)["winning"], false);
  EXPECT_EQ(json_of(constant)["counterexample"], nlohmann::json::parse("[1,1,1]"));

  const Output broadcast = hatlab("sweep --kind hbsf -m 5 -c 4 --strategy sum_broadcast --rule fewer_incorrect:2");
  ASSERT_EQ(broadcast.code, 0);
  EXPECT_EQ(json_of(broadcast)["max_incorrect"], 1);
}

TEST(CliSweep, CsvListsEveryAssignment) {
  const Output o = hatlab("sweep --kind hnsa -m 2 -c 2 --strategy mod_sum --format csv");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "assignment,correct,incorrect,verdict\n0 0,1,1,1\n0 1,1,1,1\n1 0,1,1,1\n1 1,1,1,1\n");
}

TEST(CliSweep, ParallelOutputIsByteIdentical) {
  const std::string base = "sweep --kind hnsf -m 6 -c 3 --strategy forward_selector --rule at_least:1";
  const Output one = hatlab(base + " --jobs 1");
  EXPECT_EQ(one.out, hatlab(base + " --jobs 4").out);
  EXPECT_EQ(one.out, hatlab(base + " --jobs 4 --seed 9").out);
}

TEST(CliSearch, Examples) {
  const Output yes = hatlab("search --kind hnsa -m 3 -c 2 --rule at_least:1 --expect yes");
  ASSERT_EQ(yes.code, 0);
  EXPECT_FALSE(json_of(yes)["witness_table"].is_null());
  EXPECT_EQ(json_of(yes)["best_guaranteed"], 1);

  const Output no = hatlab("search --kind hnsa -m 3 -c 2 --rule at_least:2 --expect no");
  ASSERT_EQ(no.code, 0);
  EXPECT_TRUE(json_of(no)["witness_table"].is_null());

  EXPECT_EQ(hatlab("search --kind hbsf -m 2 -c 2 --rule fewer_incorrect:1 --expect no").code, 0);
  EXPECT_EQ(hatlab("search --kind hbsf -m 2 -c 2 --rule fewer_incorrect:1 --expect yes").code, 1);
}

TEST(CliSearch, ReportsAreRepeatable) {
  const std::string args = "search --kind hbsf -m 2 -c 2 --rule fewer_incorrect:2";
  const Output first = hatlab(args);
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, hatlab(args + " --seed 5").out);
  const auto slow = json_of(hatlab(args + " --no-prune"));
  EXPECT_EQ(slow["witness_table"], json_of(first)["witness_table"]);
  EXPECT_EQ(slow["best_guaranteed"], json_of(first)["best_guaranteed"]);
}

TEST(CliLine, LazyDemos) {
  const Output goc = hatlab(R"(line --strategy gabay_oconnor -c 3 --lazy '{"base":0,"exceptions":[{"k":0,"n":5,"color":1},{"k":0,"n":17,"color":2}],"front":null,"blocks":1}')");
  ASSERT_EQ(goc.code, 0);
  EXPECT_EQ(json_of(goc)["record"]["incorrect"], nlohmann::json::parse(R"(["5","17"])"));

  const Output sb = hatlab(R"(line --strategy sum_broadcast -c 2 --lazy '{"base":0,"exceptions":[{"k":0,"n":3,"color":1}],"front":0,"blocks":1}')");
  ASSERT_EQ(sb.code, 0);
  EXPECT_EQ(json_of(sb)["record"]["front_guess"], 1);
  EXPECT_EQ(json_of(sb)["record"]["incorrect"], nlohmann::json::parse(R"(["front"])"));

  EXPECT_EQ(hatlab(R"(line --strategy sum_broadcast -c 2 --lazy '{"base":0}')").code, 2);
}

TEST(CliVerify, OnlyRunsTheMatchingCriteria) {
  const Output o = hatlab("verify --only hbsf");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("hbsf-sum-broadcast"), std::string::npos);
  EXPECT_NE(o.out.find("hbsf-exhaustive"), std::string::npos);
  EXPECT_EQ(o.out.find("hnsa-"), std::string::npos);
  EXPECT_EQ(hatlab("verify --only no-such-criterion").code, 1);
}

TEST(CliExitCodes, ConfigAndBudgetErrors) {
  EXPECT_EQ(hatlab("run --kind hnsa -m 2 -c 2 --strategy nonsense --assignment 0,0").code, 2);
  EXPECT_EQ(hatlab("run --kind hnsa -m 2 -c 2 --strategy constant:0 --assignment 0,5").code, 2);
  EXPECT_EQ(hatlab("run --kind hnsa -m 2 -c 2 --strategy constant:0").code, 2);
  EXPECT_EQ(hatlab("sweep --kind hnsa -m 2 -c 2 --strategy constant:0 --rule at_most:1").code, 2);
  EXPECT_EQ(hatlab("frobnicate").code, 2);
  EXPECT_EQ(hatlab("sweep --kind hnsa -m 12 -c 3 --strategy block_mod_sum", "HATLAB_BUDGET=sweep=1000").code, 3);
  EXPECT_EQ(hatlab("search --kind hnsa -m 2 -c 3 --no-prune", "HATLAB_BUDGET=strategies=10").code, 3);
  EXPECT_EQ(hatlab("search --kind hnsa -m 3 -c 2", "HATLAB_BUDGET=evaluations=3").code, 3);
  EXPECT_EQ(hatlab("sweep --kind hnsa -m 12 -c 3 --strategy block_mod_sum", "HATLAB_BUDGET=100").code, 3);
}

TEST(CliInstanceFile, DescriptorMatchesTheCanonicalFlags) {
  const std::string path = testing::TempDir() + "hatlab_instance.json";
  FILE* f = std::fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  std::fputs(R"({"kind":"hnsa","players":6,"colors":3,"rule":{"kind":"at_least","threshold":2}})", f);
  std::fclose(f);
  const Output from_file = hatlab("sweep --instance " + path + " --strategy block_mod_sum:n=2");
  const Output from_flags = hatlab("sweep --kind hnsa -m 6 -c 3 --strategy block_mod_sum:n=2 --rule at_least:2");
  EXPECT_EQ(from_file.code, 0);
  EXPECT_EQ(from_file.out, from_flags.out);
}
