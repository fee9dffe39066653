#include "nanogrid/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nanogrid/error.hpp"

namespace nanogrid::fuzzy {

MembershipFunction::MembershipFunction(Shape shape, std::array<double, 4> pts)
    : shape_(shape), pts_(pts) {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!std::isfinite(pts_[i])) throw ValidationError("membership breakpoint is not finite");
        if (i > 0 && pts_[i] < pts_[i - 1])
            throw ValidationError("membership breakpoints must be non-decreasing");
    }
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
    return MembershipFunction(Shape::Triangular, {a, b, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Shape::Trapezoidal, {a, b, c, d});
}

std::vector<double> MembershipFunction::breakpoints() const {
    if (shape_ == Shape::Triangular) return {pts_[0], pts_[1], pts_[3]};
    return {pts_.begin(), pts_.end()};
}

double MembershipFunction::operator()(double x) const noexcept {
    const auto [a, b, c, d] = pts_;
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    // x < b implies b > a; x > c implies d > c.
    const double v = x < b ? (x - a) / (b - a) : (d - x) / (d - c);
    return std::clamp(v, 0.0, 1.0);
}

double mf_eval(const MembershipFunction& mf, double x) noexcept { return mf(x); }

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    if (!(std::isfinite(lo_) && std::isfinite(hi_) && lo_ < hi_))
        throw ValidationError("variable '" + name_ + "': universe must satisfy lo < hi");
    if (terms_.empty()) throw ValidationError("variable '" + name_ + "' has no terms");
    std::set<std::string> seen;
    for (const auto& t : terms_) {
        if (!seen.insert(t.name).second)
            throw ValidationError("variable '" + name_ + "': duplicate term '" + t.name + "'");
        if (t.mf.support_lo() < lo_ || t.mf.support_hi() > hi_)
            throw ValidationError("variable '" + name_ + "': term '" + t.name +
                                  "' extends outside the universe");
    }
}

int LinguisticVariable::term_index(const std::string& term) const noexcept {
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].name == term) return static_cast<int>(i);
    return -1;
}

std::vector<double> LinguisticVariable::degrees(double x) const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.mf(x));
    return out;
}

std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x) {
    std::map<std::string, double> out;
    for (const auto& t : var.terms()) out.emplace(t.name, t.mf(x));
    return out;
}

FuzzySystem::FuzzySystem(std::string name, LinguisticVariable input1, LinguisticVariable input2,
                         LinguisticVariable output, std::vector<Rule> rules,
                         Operators ops, std::size_t resolution)
    : name_(std::move(name)),
      in1_(std::move(input1)),
      in2_(std::move(input2)),
      out_(std::move(output)),
      rules_(std::move(rules)),
      ops_(ops),
      resolution_(resolution) {
    if (in1_.name() == in2_.name())
        throw ValidationError("system '" + name_ + "': inputs must have distinct names");
    if (resolution_ < 2) throw ValidationError("system '" + name_ + "': resolution below 2");
    if (rules_.empty()) throw ValidationError("system '" + name_ + "' has no rules");

    for (std::size_t r = 0; r < rules_.size(); ++r) {
        const Rule& rule = rules_[r];
        const std::string where = "system '" + name_ + "' rule " + std::to_string(r + 1);
        if (rule.antecedents.empty()) throw ValidationError(where + ": empty antecedent");
        if (!(rule.weight >= 0.0 && rule.weight <= 1.0))
            throw ValidationError(where + ": weight outside [0, 1]");
        CompiledRule c;
        for (const auto& a : rule.antecedents) {
            int input = -1;
            if (a.variable == in1_.name()) input = 0;
            else if (a.variable == in2_.name()) input = 1;
            if (input < 0) throw ValidationError(where + ": unknown variable '" + a.variable + "'");
            const int term = (input == 0 ? in1_ : in2_).term_index(a.term);
            if (term < 0) throw ValidationError(where + ": unknown term '" + a.term + "'");
            c.refs.emplace_back(input, term);
        }
        c.consequent = out_.term_index(rule.consequent);
        if (c.consequent < 0)
            throw ValidationError(where + ": unknown output term '" + rule.consequent + "'");
        compiled_.push_back(std::move(c));
    }

    const double h = (out_.hi() - out_.lo()) / static_cast<double>(resolution_);
    xs_.resize(resolution_);
    for (std::size_t i = 0; i < resolution_; ++i)
        xs_[i] = out_.lo() + (static_cast<double>(i) + 0.5) * h;
    for (const auto& t : out_.terms()) {
        std::vector<double> mu(resolution_);
        for (std::size_t i = 0; i < resolution_; ++i) mu[i] = t.mf(xs_[i]);
        sampled_.push_back(std::move(mu));
    }
}

std::vector<double> FuzzySystem::activations(double in1, double in2) const {
    const std::vector<double> d1 = in1_.degrees(in1);
    const std::vector<double> d2 = in2_.degrees(in2);
    std::vector<double> out;
    out.reserve(compiled_.size());
    for (std::size_t r = 0; r < compiled_.size(); ++r) {
        const auto& refs = compiled_[r].refs;
        const bool is_and = rules_[r].connective == Connective::And;
        const bool product = ops_.and_op == AndOp::Product;
        double act = is_and ? 1.0 : 0.0;
        for (const auto& [input, term] : refs) {
            const double d = input == 0 ? d1[term] : d2[term];
            if (!is_and) act = std::max(act, d);
            else act = product ? act * d : std::min(act, d);
        }
        out.push_back(act * rules_[r].weight);
    }
    return out;
}

std::vector<double> FuzzySystem::aggregate(double in1, double in2) const {
    const std::vector<double> acts = activations(in1, in2);
    std::vector<double> agg(resolution_, 0.0);
    for (std::size_t r = 0; r < compiled_.size(); ++r) {
        const double a = acts[r];
        if (a <= 0.0) continue;
        const auto& mu = sampled_[compiled_[r].consequent];
        const bool clip = ops_.implication == Implication::Clip;
        const bool sum = ops_.aggregation == Aggregation::Sum;
        for (std::size_t i = 0; i < resolution_; ++i) {
            const double v = clip ? std::min(a, mu[i]) : a * mu[i];
            agg[i] = sum ? agg[i] + v : std::max(agg[i], v);
        }
    }
    return agg;
}

double FuzzySystem::sample_x(std::size_t i) const noexcept { return xs_[i]; }

double FuzzySystem::centroid(const std::vector<double>& agg) const {
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < resolution_; ++i) {
        mass += agg[i];
        moment += agg[i] * xs_[i];
    }
    const double h = (out_.hi() - out_.lo()) / static_cast<double>(resolution_);
    if (mass * h < 1e-12)
        throw EmptyAggregate("system '" + name_ + "': no rule fired, aggregate is empty");
    return moment / mass;
}

double FuzzySystem::infer(double in1, double in2) const { return centroid(aggregate(in1, in2)); }

double FuzzySystem::term_centroid(const std::string& term) const {
    const int k = out_.term_index(term);
    if (k < 0) throw ValidationError("system '" + name_ + "': unknown output term '" + term + "'");
    return centroid(sampled_[k]);
}

bool FuzzySystem::operator==(const FuzzySystem& o) const {
    return name_ == o.name_ && in1_ == o.in1_ && in2_ == o.in2_ && out_ == o.out_ &&
           rules_ == o.rules_ && ops_ == o.ops_ && resolution_ == o.resolution_;
}

double infer(const FuzzySystem& system, double in1, double in2) {
    return system.infer(in1, in2);
}

}  // namespace nanogrid::fuzzy
