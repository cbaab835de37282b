#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "itr/cli.hpp"
#include "itr/pipeline.hpp"

namespace itr {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "itr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("itr_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::string nt;
    for (int i = 0; i < 40; ++i) {
      nt += "<s" + std::to_string(i) + "> <type> <Thing> .\n";
      nt += "<s" + std::to_string(i) + "> <name> \"name " + std::to_string(i % 7) + "\" .\n";
    }
    nt += "<s1> <type> <Thing> .\n";
    write_file(path("in.nt"), nt);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, CompressDecompressRoundTrip) {
  const CliResult c = run({"compress", "-i", path("in.nt"), "-f", "nt", "-o", path("g.itr")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("ratio"), std::string::npos);
  const CliResult d = run({"decompress", "-i", path("g.itr"), "-o", path("out.nt"), "-f", "nt"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(lines(read_file(path("out.nt"))), lines(read_file(path("in.nt"))));
}

TEST_F(CliTest, DeterministicBytes) {
  ASSERT_EQ(run({"compress", "-i", path("in.nt"), "-o", path("a.itr")}).code, 0);
  ASSERT_EQ(run({"compress", "-i", path("in.nt"), "-o", path("b.itr")}).code, 0);
  EXPECT_EQ(read_file(path("a.itr")), read_file(path("b.itr")));
}

TEST_F(CliTest, FullQueryEqualsDecompression) {
  ASSERT_EQ(run({"compress", "-i", path("in.nt"), "-o", path("g.itr")}).code, 0);
  const CliResult q = run({"query", "-i", path("g.itr"), "-q", "? ? ?"});
  ASSERT_EQ(q.code, 0);
  EXPECT_EQ(lines(q.out), lines(read_file(path("in.nt"))));
  const CliResult bound = run({"query", "-i", path("g.itr"), "-q", "<s3> <name> ?"});
  EXPECT_EQ(bound.out, "<s3> <name> \"name 3\" .\n");
  const CliResult literal = run({"query", "-i", path("g.itr"), "-q", "? ? \"name 3\""});
  EXPECT_EQ(lines(literal.out).size(), 6u);
}

TEST_F(CliTest, UnknownTermIsEmptyMalformedIsUsage) {
  ASSERT_EQ(run({"compress", "-i", path("in.nt"), "-o", path("g.itr")}).code, 0);
  const CliResult unknown = run({"query", "-i", path("g.itr"), "-q", "<nope> ? ?"});
  EXPECT_EQ(unknown.code, 0);
  EXPECT_EQ(unknown.out, "");
  EXPECT_EQ(run({"query", "-i", path("g.itr"), "-q", "<s1> ?"}).code, 1);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"compress", "-i", path("in.nt")}).code, 1);
  EXPECT_EQ(run({"stats", "-i", path("missing.itr")}).code, 2);
  write_file(path("junk.itr"), "not a container at all, definitely not");
  const CliResult bad = run({"stats", "-i", path("junk.itr")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_FALSE(bad.err.empty());
  write_file(path("bad.nt"), "<a> <b> .\n");
  EXPECT_EQ(run({"compress", "-i", path("bad.nt"), "-o", path("x.itr")}).code, 3);
}

TEST_F(CliTest, StatsAndBench) {
  ASSERT_EQ(run({"compress", "-i", path("in.nt"), "-o", path("g.itr")}).code, 0);
  const CliResult s = run({"stats", "-i", path("g.itr")});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("fn table"), std::string::npos);
  EXPECT_NE(s.out.find("start edges"), std::string::npos);
  write_file(path("q.txt"), "<s1> ? ?\n<s2> ? ?\n? <type> ?\n");
  const CliResult b = run({"bench", "-i", path("g.itr"), "-Q", path("q.txt"), "-n", "3"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("S ? ?"), std::string::npos);
  EXPECT_NE(b.out.find("? P ?"), std::string::npos);
}

TEST_F(CliTest, EdgeListWithLabels) {
  write_file(path("g.el"), "0\tp\t1\n1\tp\t2\n2\tp\t0\n");
  write_file(path("labels.txt"), "0\tx\n1\to\n2\tx\n");
  ASSERT_EQ(run({"compress", "-i", path("g.el"), "-f", "el", "--plus", "--node-labels", path("labels.txt"), "-o",
                 path("g.itr")})
                .code,
            0);
  ASSERT_EQ(run({"decompress", "-i", path("g.itr"), "-o", path("out.el"), "-f", "el", "--node-labels",
                 path("out_labels.txt")})
                .code,
            0);
  EXPECT_EQ(lines(read_file(path("out.el"))), lines(read_file(path("g.el"))));
  EXPECT_EQ(lines(read_file(path("out_labels.txt"))), lines(read_file(path("labels.txt"))));
  const CliResult q = run({"query", "-i", path("g.itr"), "-q", "1 ? ?"});
  EXPECT_EQ(q.out, "1\tp\t2\n");
}

}  // namespace
}  // namespace itr
