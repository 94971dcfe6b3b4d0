#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "advwave/app/config.hpp"
#include "advwave/app/csv.hpp"

namespace fs = std::filesystem;
using namespace advwave::app;

namespace {

struct Table {
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string text;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        FAIL("missing column " << name);
        return -1;
    }
    double num(std::size_t r, const std::string& name) const { return std::stod(rows[r][col(name)]); }
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Table read_csv(const fs::path& p) {
    Table t;
    std::ifstream in(p);
    REQUIRE(in);
    std::stringstream all;
    all << in.rdbuf();
    t.text = all.str();
    std::stringstream lines(t.text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("# ", 0) == 0) {
            auto eq = line.find(" = ");
            if (eq != std::string::npos) t.meta[line.substr(2, eq - 2)] = line.substr(eq + 3);
        } else if (t.columns.empty()) {
            t.columns = split(line);
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("advwave_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run(const std::string& args) {
    const char* exe = std::getenv("ADVWAVE_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "ADVWAVE_CLI must point at the advwave binary");
    std::string cmd = std::string(exe) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("config file and flag precedence") {
    auto d = scratch("config");
    {
        std::ofstream f(d / "run.cfg");
        f << "# comment\n gamma = 2e8  # trailing\nomega0_ratio=30\ncount = 64\n\n";
    }
    RunConfig cfg;
    cfg.gamma = 5.0;
    cfg.merge_file((d / "run.cfg").string());
    CHECK(*cfg.gamma == 5.0);
    CHECK(*cfg.omega0Ratio == 30);
    CHECK(cfg.options.at("count") == "64");
    CHECK_THROWS_AS(cfg.set("colour", "red"), UsageError);
    CHECK_THROWS_AS(cfg.set("gamma", "fast"), UsageError);
    CHECK_THROWS_AS(cfg.merge_file((d / "missing.cfg").string()), IoError);

    auto r = resolve(cfg, "x", Defaults{});
    CHECK(r.r0Gamma == doctest::Approx(1.0 / 3));
    RunConfig bad;
    bad.tmaxGamma = -1;
    CHECK_THROWS_AS(resolve(bad, "x", Defaults{}), UsageError);
    CHECK(fmt_double(0.1) == "0.10000000000000001");
}

TEST_CASE("figure data") {
    auto d = scratch("figure");
    REQUIRE(run("figure 1 --out " + d.string()) == 0);
    auto f1 = read_csv(d / "fig1.csv");
    CHECK(fs::exists(d / "fig1.svg"));
    CHECK(f1.columns == std::vector<std::string>{"t_gamma", "n_dps", "n_dpvacs", "n_dptotal"});
    CHECK(f1.meta.at("gamma") == "100000000");
    CHECK(f1.meta.at("omega0_ratio") == "10");
    double r0 = 1.0 / 3;
    bool sawLate = false;
    for (std::size_t i = 0; i < f1.rows.size(); ++i) {
        double t = f1.num(i, "t_gamma");
        if (t < 2 * r0) CHECK(f1.num(i, "n_dpvacs") == 0);
        if (t < r0) CHECK(f1.num(i, "n_dps") == 0);
        if (t > 1) sawLate = sawLate || f1.num(i, "n_dpvacs") != 0;
    }
    CHECK(sawLate);

    // deterministic, and figure 2 at the first figure's w0 is the same data
    REQUIRE(run("figure 1 --out " + d.string() + "/again") == 0);
    CHECK(read_csv(d / "again" / "fig1.csv").text == f1.text);
    REQUIRE(run("figure 2 --omega0-ratio 10 --out " + d.string()) == 0);
    CHECK(read_csv(d / "fig2.csv").rows == f1.rows);

    REQUIRE(run("figure 3 --out " + d.string()) == 0);
    auto f3 = read_csv(d / "fig3.csv");
    CHECK(std::stod(f3.meta.at("fit_slope_over_gamma")) == doctest::Approx(1.0).epsilon(0.02));

    CHECK(run("figure 4 --out " + d.string()) == 1);
    CHECK(run("figure 1 --tmax-gamma 0.5 --out " + d.string()) == 1);
    CHECK(run("figure 1 --out /proc/advwave_not_writable") == 3);
    CHECK(run("figure 1 --config " + (d / "none.cfg").string()) == 3);
    CHECK(run("nonsense") == 1);
}

TEST_CASE("config file drives a run; flags override it") {
    auto d = scratch("cfgrun");
    {
        std::ofstream f(d / "run.cfg");
        f << "omega0_ratio = 30\ntmax_gamma = 3\nout = " << d.string() << "\n";
    }
    REQUIRE(run("figure 1 --omega0-ratio 20 --config " + (d / "run.cfg").string()) == 0);
    auto t = read_csv(d / "fig1.csv");
    CHECK(t.meta.at("omega0_ratio") == "20");
    CHECK(t.meta.at("tmax_gamma") == "3");
    {
        std::ofstream f(d / "bad.cfg");
        f << "colour = red\n";
    }
    CHECK(run("figure 1 --config " + (d / "bad.cfg").string()) == 1);
}

TEST_CASE("power curves") {
    auto d = scratch("power");
    REQUIRE(run("power nonpert --out " + d.string()) == 0);
    REQUIRE(run("power pert --out " + d.string()) == 0);
    auto np = read_csv(d / "power_nonpert.csv");
    auto pt = read_csv(d / "power_pert.csv");
    double w0G = 100 * 1e8 * 1e8;
    CHECK(np.num(0, "tr_gamma") == 0);
    CHECK(np.num(0, "p_total") == doctest::Approx(w0G).epsilon(1e-14));
    for (std::size_t i = 0; i < np.rows.size(); ++i)
        CHECK(np.num(i, "p_total") / np.num(i, "p_g") == doctest::Approx(2).epsilon(1e-14));
    REQUIRE(pt.rows.size() == 1);
    for (const char* c : {"p_g", "p_s", "p_vacs", "p_total"})
        CHECK(pt.num(0, c) == doctest::Approx(np.num(0, c)).epsilon(1e-12));
    CHECK(run("power exact --out " + d.string()) == 1);
}

TEST_CASE("correlation scan") {
    auto d = scratch("corr");
    REQUIRE(run("corr --out " + d.string()) == 0);
    auto t = read_csv(d / "corr.csv");
    REQUIRE(t.rows.size() == 41 * 41);
    CHECK(t.meta.count("boundary") == 1);
    double r0 = 1.0 / 3;
    int flagged = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        double a = t.num(i, "t_gamma"), b = t.num(i, "tp_gamma");
        if (a == b) CHECK(t.num(i, "delta_re") == 0);
        if (a == b) CHECK(t.num(i, "delta_im") == 0);
        if (a < r0) CHECK(t.num(i, "g_re") == 0);
        if (t.num(i, "on_boundary") == 1) {
            ++flagged;
            CHECK(std::abs(b - a - 2 * r0) <= 0.025 + 1e-12);
        }
        CHECK(t.num(i, "c_re") == doctest::Approx(t.num(i, "g_re") + t.num(i, "delta_re")));
    }
    CHECK(flagged > 0);
}

TEST_CASE("detector rates") {
    auto d = scratch("detect");
    REQUIRE(run("detect --x-gamma 1 --out " + d.string()) == 0);
    auto t = read_csv(d / "detect.csv");
    CHECK(std::stod(t.meta.at("max_ratio")) < 0.01);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.num(i, "t_gamma") < 2) CHECK(t.num(i, "rate_c") == t.num(i, "rate_g"));
}

TEST_CASE("validation report") {
    auto d = scratch("validate");
    CHECK(run("validate --out " + d.string()) == 0);
    auto ok = read_csv(d / "validate.csv");
    for (std::size_t i = 0; i < ok.rows.size(); ++i) CHECK(ok.rows[i][ok.col("pass")] == "1");

    // too few modes: the excitation revives inside the window
    CHECK(run("validate --count 50 --out " + d.string()) == 2);
    auto few = read_csv(d / "validate.csv");
    for (std::size_t i = 0; i < few.rows.size(); ++i)
        if (few.rows[i][0] == "sigma_z_max_abs_err") {
            CHECK(few.rows[i][few.col("pass")] == "0");
            CHECK(few.num(i, "measured") > 0.03);
        }

    // narrow band: the kernel mass misses unity
    CHECK(run("validate --count 400 --span 10 --out " + d.string()) == 2);
    auto narrow = read_csv(d / "validate.csv");
    for (std::size_t i = 0; i < narrow.rows.size(); ++i)
        if (narrow.rows[i][0] == "bath_mass_max_dev") CHECK(narrow.rows[i][narrow.col("pass")] == "0");
}
