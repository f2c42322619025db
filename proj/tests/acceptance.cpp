// One line per acceptance criterion. Tolerances and time budgets are fixed
// here, independently of the tolerances the library attaches to its reports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "modrop/verify.hpp"

using namespace modrop;

namespace {

struct Bound {
    const char* id;
    double tol;
};

struct Criterion {
    int number;
    const char* title;
    std::vector<Bound> bounds;
    double budget_s;
};

int failures = 0;

void line(int n, bool ok, const std::string& title, const std::string& detail) {
    std::printf("criterion %2d %s  %s: %s\n", n, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run(const Criterion& c, const RunConfig& cfg, bool extra_ok = true, const std::string& extra = "") {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> ids;
    for (const auto& b : c.bounds) ids.emplace_back(b.id);
    const auto reports = run_relations(ids, cfg);
    const double elapsed = seconds_since(t0);
    bool ok = extra_ok && elapsed < c.budget_s;
    std::string detail;
    for (const auto& b : c.bounds) {
        for (const auto& r : reports) {
            if (r.relation_id != b.id) continue;
            const bool good = r.error.empty() && std::isfinite(r.residual) && r.residual <= b.tol;
            ok = ok && good;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s %.2e<=%.0e%s; ", b.id, r.residual, b.tol, good ? "" : " (!)");
            detail += buf;
            if (!r.error.empty()) detail += "error: " + r.error + "; ";
        }
    }
    char tbuf[64];
    std::snprintf(tbuf, sizeof tbuf, "%.1fs<%.0fs", elapsed, c.budget_s);
    line(c.number, ok, c.title, detail + extra + tbuf);
}

}  // namespace

int main() {
    const RunConfig cfg;

    run({1, "gamma identities",
         {{"gamma-quadrature", 1e-8}, {"gamma-diff", 1e-8}, {"gamma-refl", 1e-8}, {"gamma-swap", 1e-8}},
         10},
        cfg);
    run({2, "D identities", {{"D-even", 1e-8}, {"D-inverse", 1e-8}, {"D-diff", 1e-8}}, 5}, cfg);
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto table = convergence_series("FourierD", {10, 20, 40}, cfg);
        const double budget_left = 30.0 - seconds_since(t0);
        char buf[96];
        std::snprintf(buf, sizeof buf, "T sweep %.1e,%.1e,%.1e %s; ", table.rows[0].residual, table.rows[1].residual,
                      table.rows[2].residual, table.non_increasing ? "non-increasing" : "INCREASING");
        run({3, "Fourier transform of D", {{"FourierD", 1e-6}}, budget_left}, cfg, table.non_increasing, buf);
    }
    run({4, "integral star-triangle", {{"str-trg", 1e-6}}, 60}, cfg);
    run({5, "operator star-triangle", {{"star-triangle-op", 1e-5}, {"WSW1", 1e-5}, {"WSW2", 1e-5}}, 120}, cfg);
    run({6, "modular double algebra",
         {{"qsl2", 1e-8}, {"qsl2-tilde", 1e-8}, {"qsl2-cross", 1e-8}, {"Casimir", 1e-8}},
         60},
        cfg);
    run({7, "intertwiner", {{"intw1", 1e-6}, {"intw-backend", 1e-6}}, 60}, cfg);
    // Sweeps report max(step ratio, final/1e-6); <= 1 means monotone and converged.
    run({8, "L-operator level",
         {{"LFact", 1e-10},
          {"NM", 1e-10},
          {"WL2", 1e-5},
          {"intwL+L-", 1e-5},
          {"L+toL-", 1e-8},
          {"L+-limit", 1.0},
          {"ell-limit", 1.0}},
         180},
        cfg);
    run({9, "S-operator relations", {{"SLL", 1e-5}, {"def1", 1e-5}, {"def3", 1e-5}}, 180}, cfg);
    run({10, "RLL relations and R forms",
         {{"RLL1", 1e-4}, {"RLL2", 1e-4}, {"R-trivial", 1e-4}, {"R-integral", 1e-6}},
         300},
        cfg);
    run({11, "Yang-Baxter with spectral parameters", {{"YB1-coarse", 1e-2}, {"YB1", 1e-3}}, 600}, cfg);
    run({12, "reductions and universal R",
         {{"red", 1.0}, {"R-translation", 1e-8}, {"rBaxt", 1e-5}, {"YB0", 1e-3}, {"rlL", 1e-4}, {"rLl", 1e-4}},
         300},
        cfg);
    run({13, "exact holomorphic sector",
         {{"sl2c-f1", 0.0},
          {"sl2c-f2", 0.0},
          {"sl2c-L-L+", 0.0},
          {"sl2c-L+L-", 0.0},
          {"sl2c-canonical", 0.0},
          {"sl2c-L-L+L-L+", 0.0},
          {"sl2c-RLL", 0.0}},
         30},
        cfg);

    {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::string> ids = {"gamma-diff", "FourierD", "str-trg",  "intw1", "WL2", "L+-limit",
                                              "sl2c-RLL",   "SLL",      "YB1-coarse", "red", "R-translation"};
        const auto a = run_relations(ids, cfg);
        const auto b = run_relations(ids, cfg);
        RunConfig threaded = cfg;
        threaded.jobs = 3;
        const auto c = run_relations(ids, threaded);
        int mismatched = 0;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (std::memcmp(&a[k].residual, &b[k].residual, sizeof(double)) != 0) ++mismatched;
            if (std::memcmp(&a[k].residual, &c[k].residual, sizeof(double)) != 0) ++mismatched;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu relations run twice and once on 3 threads, %d bit mismatches; %.1fs",
                      ids.size(), mismatched, seconds_since(t0));
        line(14, mismatched == 0, "determinism", buf);
    }

    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
