// Acceptance suite. One line per criterion; exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "mamdani_oracle.hpp"
#include "nanogrid/ems.hpp"
#include "nanogrid/fuzzy.hpp"
#include "nanogrid/model.hpp"
#include "nanogrid/scenario.hpp"
#include "nanogrid/sim.hpp"

using namespace nanogrid;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = NANOGRID_SCENARIO_DIR;

constexpr double kOmegaLo = 314.085;
constexpr double kOmegaHi = 314.32725;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) ++failures;
}

struct Run {
    ScenarioBundle bundle;
    Trace trace;
    SummaryMetrics m;
    double seconds = 0;
};

Run run(const std::string& file, std::optional<ControllerKind> kind = std::nullopt) {
    Run r{load_scenario_bundle(kScenarios / file), {}, {}, 0};
    if (kind) r.bundle.scenario.controller = *kind;
    const auto t0 = std::chrono::steady_clock::now();
    r.trace = run_scenario(r.bundle);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.m = summarize(r.trace, r.bundle.scenario.params);
    return r;
}

std::string str(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

bool omega_in_bounds(const Trace& t) {
    for (const auto& r : t.records)
        if (r.omega < kOmegaLo - 1e-12 || r.omega > kOmegaHi + 1e-12) return false;
    return true;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_dirs(const fs::path& a, const fs::path& b) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const auto other = b / e.path().filename();
        if (!fs::exists(other) || slurp(e.path()) != slurp(other)) return false;
        ++n;
    }
    return n > 0 && n == static_cast<std::size_t>(std::distance(fs::directory_iterator(b),
                                                                  fs::directory_iterator{}));
}

// Random two-input system, built twice: once through the library, once for the oracle.
struct RandomCase {
    fuzzy::FuzzySystem sys;
    oracle::System ref;
    double x1, x2;
};

RandomCase random_case(std::mt19937_64& rng) {
    using fuzzy::MembershipFunction;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Ramps span at least a few quadrature cells; a vertical edge inside the
    // universe is a step the midpoint rule only resolves to O(h).
    auto shapes = [&](double lo, double hi, int n, double min_width) {
        std::vector<oracle::Shape> out;
        for (int i = 0; i < n; ++i) {
            const double w = min_width + u(rng) * (hi - lo - min_width);
            const double a = lo + u(rng) * (hi - lo - w);
            const double b = a + (0.2 + 0.6 * u(rng)) * w;
            const double d = a + w;
            const double c = u(rng) < 0.3 ? b + 0.7 * u(rng) * (d - b) : b;
            out.push_back({a, b, c, d});
        }
        if (u(rng) < 0.3) out.push_back({lo, lo, lo, lo + min_width});  // left shoulder
        return out;
    };
    auto variable = [](const std::string& name, double lo, double hi,
                       const std::vector<oracle::Shape>& s) {
        std::vector<fuzzy::Term> terms;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto mf = s[i].b == s[i].c
                                ? MembershipFunction::triangular(s[i].a, s[i].b, s[i].d)
                                : MembershipFunction::trapezoidal(s[i].a, s[i].b, s[i].c, s[i].d);
            terms.push_back({"T" + std::to_string(i), mf});
        }
        return fuzzy::LinguisticVariable(name, lo, hi, terms);
    };

    for (;;) {
        const double olo = -5.0 + 10.0 * u(rng);
        const double ohi = olo + 0.5 + 20.0 * u(rng);
        oracle::System ref;
        // Input terms span the whole unit universe so some rule always fires.
        ref.in1 = shapes(0, 1, 2 + static_cast<int>(u(rng) * 3), 0.4);
        ref.in2 = shapes(0, 1, 2 + static_cast<int>(u(rng) * 3), 0.4);
        ref.out = shapes(olo, ohi, 2 + static_cast<int>(u(rng) * 3), 0.1 * (ohi - olo));
        ref.lo = olo;
        ref.hi = ohi;
        ref.scale = u(rng) < 0.5;
        ref.product_and = u(rng) < 0.5;
        ref.sum = u(rng) < 0.5;
        const int n_rules = 2 + static_cast<int>(u(rng) * 5);
        std::vector<fuzzy::Rule> rules;
        for (int k = 0; k < n_rules; ++k) {
            oracle::Rule r{static_cast<int>(u(rng) * ref.in1.size()),
                           static_cast<int>(u(rng) * ref.in2.size()), u(rng) < 0.7,
                           static_cast<int>(u(rng) * ref.out.size()), 0.2 + 0.8 * u(rng)};
            ref.rules.push_back(r);
            rules.push_back({{{"a", "T" + std::to_string(r.term1)},
                              {"b", "T" + std::to_string(r.term2)}},
                             r.use_and ? fuzzy::Connective::And : fuzzy::Connective::Or,
                             "T" + std::to_string(r.out),
                             r.weight});
        }
        const double x1 = u(rng), x2 = u(rng);
        const auto acts = oracle::activations(ref, x1, x2);
        double top = 0;
        for (double a : acts) top = std::max(top, a);
        if (top < 0.05) continue;  // keep the aggregate well away from empty
        fuzzy::FuzzySystem sys(
            "random", variable("a", 0, 1, ref.in1), variable("b", 0, 1, ref.in2),
            variable("y", olo, ohi, ref.out), rules,
            fuzzy::Operators{ref.product_and ? fuzzy::AndOp::Product : fuzzy::AndOp::Min,
                             ref.scale ? fuzzy::Implication::Scale : fuzzy::Implication::Clip,
                             ref.sum ? fuzzy::Aggregation::Sum : fuzzy::Aggregation::Max});
        return {std::move(sys), std::move(ref), x1, x2};
    }
}

}  // namespace

int main() {
    const NanogridParams p;
    const double omega_o = p.omega_nominal;

    const Run s1 = run("scenario1_high_soc.cfg");
    const Run s2 = run("scenario2_low_soc_4x.cfg");
    const Run stress_flc = run("stress_charge.cfg");
    const Run stress_prop = run("stress_charge.cfg", ControllerKind::Proportional);

    // A1
    {
        const bool ok = s1.m.aux_energy_wh == 0.0 && s1.m.max_soc_pct <= 95.0 + 0.1 &&
                        s1.m.violations_charge == 0 && s1.m.violations_discharge == 0 &&
                        omega_in_bounds(s1.trace) && s1.seconds < 5.0;
        report("A1", ok,
               "aux_wh=" + str(s1.m.aux_energy_wh) + " max_soc=" + str(s1.m.max_soc_pct) +
                   " power_violations=" +
                   std::to_string(s1.m.violations_charge + s1.m.violations_discharge) +
                   " omega=[" + str(s1.m.min_omega) + "," + str(s1.m.max_omega) +
                   "] runtime_s=" + str(s1.seconds));
    }

    // A2
    {
        std::size_t stray = 0;
        for (const auto& r : s1.trace.records)
            if (r.p_pv_avail_w - r.p_pv_w > 0.0 && !(r.omega > omega_o)) ++stray;
        report("A2", s1.m.curtailed_energy_wh > 0.0 && stray == 0,
               "curtailed_wh=" + str(s1.m.curtailed_energy_wh) +
                   " curtailed_steps_at_or_below_nominal=" + std::to_string(stray));
    }

    // A3
    {
        const bool ok = s2.m.min_soc_pct >= 40.0 - 0.1 && s2.m.violations_soc_low == 0 &&
                        s2.m.violations_charge == 0 && s2.m.violations_discharge == 0 &&
                        s2.m.aux_energy_wh > 0.0;
        report("A3", ok,
               "min_soc=" + str(s2.m.min_soc_pct) + " max_charge_w=" + str(s2.m.max_charge_w) +
                   " max_discharge_w=" + str(s2.m.max_discharge_w) +
                   " aux_wh=" + str(s2.m.aux_energy_wh));
    }

    // A4
    {
        const double soc0 = s2.trace.records.front().soc_pct;
        const double soc1 = s2.trace.records.back().soc_pct;
        report("A4", s2.m.charging_fraction > 0.5 && soc1 > soc0,
               "charging_fraction=" + str(s2.m.charging_fraction) + " soc_start=" + str(soc0) +
                   " soc_end=" + str(soc1));
    }

    // A5
    report("A5", stress_prop.m.violations_charge >= 1 && stress_flc.m.violations_charge == 0,
           "charge_violations flc=" + std::to_string(stress_flc.m.violations_charge) +
               " proportional=" + std::to_string(stress_prop.m.violations_charge));

    // A6
    {
        struct Check { double got, want; };
        const Check checks[] = {
            {normalize_soc_high(95, p), 0.0},     {normalize_soc_high(40, p), 1.0},
            {normalize_soc_high(94.9, p), 0.1 / 55.0},
            {normalize_charge(1000, p), 0.0},     {normalize_charge(0, p), 1.0},
            {normalize_charge(250, p), 0.75},
            {normalize_soc_low(40, p), 0.0},      {normalize_soc_low(50, p), 1.0},
            {normalize_soc_low(95, p), 1.0},
            {normalize_discharge(1000, p), 0.0},  {normalize_discharge(0, p), 1.0},
            {normalize_discharge(600, p), 0.4},
        };
        double worst = 0;
        for (const auto& c : checks) worst = std::max(worst, std::abs(c.got - c.want));
        report("A6", worst <= 1e-12, "max_abs_err=" + str(worst) + " tol=1e-12");
    }

    // A7
    {
        const double aux = aux_power(omega_o - 0.075, p);
        const double pv = pv_power(omega_o + 0.167250, 2230, p);
        report("A7", aux == 1000.0 && pv == 0.0,
               "aux_power=" + str(aux) + " pv_power=" + str(pv));
    }

    // A8
    {
        std::mt19937_64 rng(20240611);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const RandomCase c = random_case(rng);
            const double got = c.sys.infer(c.x1, c.x2);
            const double want = *oracle::infer(c.ref, c.x1, c.x2);
            worst = std::max(worst, std::abs(got - want) / (c.ref.hi - c.ref.lo));
        }
        const FlcController flc(p);
        const bool corners = flc.shift_plus(1, 1) == 0.0 && flc.shift_plus(0, 0.5) == p.shift_plus_max() &&
                             flc.shift_plus(0.5, 0) == p.shift_plus_max() &&
                             flc.shift_minus(1, 1) == 0.0 &&
                             flc.shift_minus(0, 0.5) == -p.shift_minus_max() &&
                             flc.shift_minus(0.5, 0) == -p.shift_minus_max();
        report("A8", worst <= 1e-4 && corners,
               "cases=100 max_err_over_width=" + str(worst) + " tol=1e-4 corners_exact=" +
                   (corners ? "yes" : "no"));
    }

    // A9
    {
        double worst_balance = 0, worst_wh = 0;
        for (const Run* r : {&s1, &s2, &stress_flc, &stress_prop}) {
            const auto& rec = r->trace.records;
            double wh = 0;
            for (std::size_t k = 0; k < rec.size(); ++k) {
                const double res = rec[k].p_pv_w + rec[k].p_aux_w - rec[k].p_load_w - rec[k].p_bat_w;
                worst_balance = std::max(worst_balance, std::abs(res));
                if (k + 1 < rec.size()) wh += rec[k].p_bat_w * r->trace.dt_s / 3600.0;
            }
            const double soc_wh = (rec.back().soc_pct - rec.front().soc_pct) / 100.0 *
                                  r->bundle.scenario.params.battery_energy_wh();
            worst_wh = std::max(worst_wh, std::abs(soc_wh - wh));
        }
        report("A9", worst_balance <= 1e-9 && worst_wh <= 1e-3,
               "max_balance_residual_w=" + str(worst_balance) +
                   " max_bookkeeping_err_wh=" + str(worst_wh) + " tol=1e-3");
    }

    // A10
    {
        const fs::path root = fs::temp_directory_path() / "nanogrid_acceptance";
        fs::remove_all(root);
        std::ostringstream sink;
        bool ok = true;
        for (const char* pass : {"a", "b"}) {
            const fs::path d = root / pass;
            for (const char* f : {"scenario1_high_soc.cfg", "scenario2_low_soc_4x.cfg"})
                ok &= cli::cmd_run(kScenarios / f, d, std::nullopt, sink, sink) == 0;
            ok &= cli::cmd_compare(kScenarios / "stress_charge.cfg", d, sink, sink) == 0;
            ok &= cli::cmd_dump_fis(d / "fis.txt", sink) == 0;
        }
        ok = ok && same_dirs(root / "a", root / "b");
        fs::remove_all(root);
        report("A10", ok, ok ? "outputs byte-identical" : "outputs differ or a command failed");
    }

    return failures == 0 ? 0 : 1;
}
