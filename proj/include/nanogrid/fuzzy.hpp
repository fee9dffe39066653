#pragma once

// Mamdani fuzzy inference over two inputs and one output.
//
// Membership functions are piecewise linear (triangular or trapezoidal).
// Rules combine their antecedents with min (AND) or max (OR), shape their
// consequent by clipping or scaling, and the aggregate (pointwise max) is
// defuzzified by its centroid using the midpoint rule on N uniform samples
// of the output universe.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace nanogrid::fuzzy {

enum class Shape { Triangular, Trapezoidal };

class MembershipFunction {
public:
    /// Coincident breakpoints (a == b or b == c) give a shoulder.
    static MembershipFunction triangular(double a, double b, double c);
    static MembershipFunction trapezoidal(double a, double b, double c, double d);

    Shape shape() const noexcept { return shape_; }

    /// Breakpoints: 3 for triangular, 4 for trapezoidal.
    std::vector<double> breakpoints() const;

    double support_lo() const noexcept { return pts_[0]; }
    double support_hi() const noexcept { return pts_[3]; }

    double operator()(double x) const noexcept;

    bool operator==(const MembershipFunction&) const = default;

private:
    MembershipFunction(Shape shape, std::array<double, 4> pts);

    Shape shape_;
    // Triangles are stored as degenerate trapezoids with b == c.
    std::array<double, 4> pts_;
};

/// Degree of membership of x, always in [0, 1]; 0 outside the support.
double mf_eval(const MembershipFunction& mf, double x) noexcept;

struct Term {
    std::string name;
    MembershipFunction mf;

    bool operator==(const Term&) const = default;
};

class LinguisticVariable {
public:
    LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

    const std::string& name() const noexcept { return name_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Index of the named term, or -1.
    int term_index(const std::string& term) const noexcept;

    /// Degrees in term order.
    std::vector<double> degrees(double x) const;

    bool operator==(const LinguisticVariable&) const = default;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<Term> terms_;
};

/// One degree per term, keyed by term name. Degrees need not sum to 1.
std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x);

enum class Connective { And, Or };

/// How a rule's activation shapes its consequent term.
enum class Implication {
    Clip,   // min(activation, mu(y))
    Scale,  // activation * mu(y)
};

/// t-norm behind Connective::And. OR is always the maximum.
enum class AndOp { Min, Product };

/// How implied consequents combine into one output set.
enum class Aggregation { Max, Sum };

struct Operators {
    AndOp and_op = AndOp::Min;
    Implication implication = Implication::Clip;
    Aggregation aggregation = Aggregation::Max;

    bool operator==(const Operators&) const = default;
};

struct Antecedent {
    std::string variable;
    std::string term;

    bool operator==(const Antecedent&) const = default;
};

struct Rule {
    std::vector<Antecedent> antecedents;
    Connective connective = Connective::And;
    std::string consequent;
    double weight = 1.0;

    bool operator==(const Rule&) const = default;
};

inline constexpr std::size_t kDefaultResolution = 1001;

/// Two-input, one-output Mamdani system. Immutable once built.
class FuzzySystem {
public:
    /// Throws ValidationError if any rule names an unknown variable or term,
    /// a weight is outside [0, 1], or the resolution is below 2.
    FuzzySystem(std::string name, LinguisticVariable input1, LinguisticVariable input2,
                LinguisticVariable output, std::vector<Rule> rules,
                Operators ops = {}, std::size_t resolution = kDefaultResolution);

    const std::string& name() const noexcept { return name_; }
    const LinguisticVariable& input1() const noexcept { return in1_; }
    const LinguisticVariable& input2() const noexcept { return in2_; }
    const LinguisticVariable& output() const noexcept { return out_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const Operators& operators() const noexcept { return ops_; }
    Implication implication() const noexcept { return ops_.implication; }
    std::size_t resolution() const noexcept { return resolution_; }

    /// Activation of each rule, in rule order.
    std::vector<double> activations(double in1, double in2) const;

    /// Sampled aggregate membership at the midpoint abscissae.
    std::vector<double> aggregate(double in1, double in2) const;

    /// Abscissa of sample i (midpoint of the i-th cell).
    double sample_x(std::size_t i) const noexcept;

    /// Crisp output. Throws EmptyAggregate when every rule fires at zero.
    double infer(double in1, double in2) const;

    /// Centroid of one output term at full activation, on the same quadrature.
    double term_centroid(const std::string& term) const;

    bool operator==(const FuzzySystem& other) const;

private:
    struct CompiledRule {
        // Per antecedent: which input (0 or 1) and which term index.
        std::vector<std::pair<int, int>> refs;
        int consequent;
    };

    double centroid(const std::vector<double>& agg) const;

    std::string name_;
    LinguisticVariable in1_;
    LinguisticVariable in2_;
    LinguisticVariable out_;
    std::vector<Rule> rules_;
    Operators ops_;
    std::size_t resolution_;

    std::vector<CompiledRule> compiled_;
    std::vector<double> xs_;
    // sampled_[k][i] = mu_k(xs_[i]) for output term k.
    std::vector<std::vector<double>> sampled_;
};

/// Free-function form of FuzzySystem::infer.
double infer(const FuzzySystem& system, double in1, double in2);

}  // namespace nanogrid::fuzzy
