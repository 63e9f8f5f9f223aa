#include "cubind/driver.hpp"
#include "support.hpp"

using namespace cubind;

namespace {

Report run(const std::string& text, DriverOptions o = {}) {
    Env env;
    return run_file(parse_file(text, env), "t.cit", o);
}

const char* kSrc =
    "data nat = zero | suc <n : self>\n"
    "data circle = base | lp(x) [x=0 -> base | x=1 -> base]\n"
    "def two : nat = suc(suc(zero))\n"
    "eval two\n"
    "trace lp(0)\n"
    "observe lp(1) : circle expect base\n";

}  // namespace

TEST(Driver, JsonFieldOrder) {
    Report r = run(kSrc);
    ASSERT_TRUE(r.ok());
    std::string j = r.json();
    EXPECT_NE(j.find(R"j({"directive":"eval two","status":"ok","steps":0,"value":"suc(suc(zero))"})j"), std::string::npos)
        << j;
    EXPECT_NE(j.find(R"j({"directive":"trace lp(0)","status":"ok","steps":1,"value":["lp(0)","base"]})j"),
              std::string::npos)
        << j;
}

TEST(Driver, Deterministic) { EXPECT_EQ(run(kSrc).json(), run(kSrc).json()); }

TEST(Driver, ExpectationMismatch) {
    Report r = run(std::string(kSrc) + "observe two : nat expect zero\n");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.lines.back().status, "mismatch");
}

TEST(Driver, ErrorsCarrySourcePositions) {
    Report r = run("data nat = zero | suc <n : self>\neval hcom {nat} 0 ~> 1 zero [1=1 -> y. suc(zero)]\n");
    EXPECT_FALSE(r.ok());
    ASSERT_TRUE(r.lines.back().error);
    EXPECT_EQ(r.lines.back().error->rfind("t.cit:2:1: Conversion", 0), 0u) << *r.lines.back().error;
}

TEST(Driver, FuelLimit) {
    DriverOptions o;
    o.fuel = 2;
    Report r = run("data nat = zero | suc <n : self>\neval coe {z. nat} 0 ~> 1 coe {z. nat} 0 ~> 1 suc(zero)\n", o);
    EXPECT_FALSE(r.ok());
}

TEST(Driver, CheckOnlyDoesNotRun) {
    DriverOptions o;
    o.execute = false;
    Report r = run(std::string(kSrc) + "observe two : nat expect zero\n", o);
    EXPECT_TRUE(r.ok());
}
