#include "nanogrid/fis_text.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "nanogrid/error.hpp"
#include "nanogrid/io.hpp"
#include "nanogrid/keyvalue.hpp"

namespace nanogrid {

using fuzzy::Connective;
using fuzzy::FuzzySystem;
using fuzzy::Implication;
using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;
using fuzzy::Rule;
using fuzzy::Shape;
using fuzzy::Term;

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

void render_variable(std::ostream& out, const std::string& prefix, const LinguisticVariable& v) {
    out << prefix << " = " << v.name() << ' ' << format_exact(v.lo()) << ' '
        << format_exact(v.hi()) << '\n';
    for (std::size_t i = 0; i < v.terms().size(); ++i) {
        const Term& t = v.terms()[i];
        out << prefix << ".term." << i + 1 << " = " << t.name << ' '
            << (t.mf.shape() == Shape::Triangular ? "tri" : "trap");
        for (double b : t.mf.breakpoints()) out << ' ' << format_exact(b);
        out << '\n';
    }
}

struct VariableDraft {
    std::optional<KeyValue> header;
    std::map<int, KeyValue> terms;
};

struct SystemDraft {
    std::optional<KeyValue> name;
    std::optional<KeyValue> and_op;
    std::optional<KeyValue> implication;
    std::optional<KeyValue> aggregation;
    std::optional<KeyValue> resolution;
    VariableDraft in1;
    VariableDraft in2;
    VariableDraft out;
    std::map<int, KeyValue> rules;
};

// Maps an optional `key = word` onto one of two enum values; absent means `first`.
template <typename E>
E parse_choice(const std::optional<KeyValue>& kv, const char* first, E a, const char* second,
               E b, const char* what) {
    if (!kv || kv->value == first) return a;
    if (kv->value == second) return b;
    throw ParseError(std::string(what) + " must be " + first + " or " + second, kv->line);
}

int parse_index(const std::string& s, std::size_t line) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
        throw ParseError("bad index '" + s + "'", line);
    return std::stoi(s);
}

Term parse_term(const KeyValue& kv) {
    const auto tok = split_ws(kv.value);
    if (tok.size() < 2) throw ParseError("expected '<name> tri|trap <breakpoints>'", kv.line);
    std::vector<double> pts;
    for (std::size_t i = 2; i < tok.size(); ++i) pts.push_back(parse_double(tok[i], kv.line));
    if (tok[1] == "tri" && pts.size() == 3)
        return {tok[0], MembershipFunction::triangular(pts[0], pts[1], pts[2])};
    if (tok[1] == "trap" && pts.size() == 4)
        return {tok[0], MembershipFunction::trapezoidal(pts[0], pts[1], pts[2], pts[3])};
    throw ParseError("expected 'tri a b c' or 'trap a b c d'", kv.line);
}

LinguisticVariable build_variable(const VariableDraft& d, const std::string& what) {
    if (!d.header) throw ValidationError("missing " + what);
    const auto tok = split_ws(d.header->value);
    if (tok.size() != 3) throw ParseError("expected '<name> <lo> <hi>'", d.header->line);
    std::vector<Term> terms;
    for (const auto& [idx, kv] : d.terms) terms.push_back(parse_term(kv));
    return LinguisticVariable(tok[0], parse_double(tok[1], d.header->line),
                              parse_double(tok[2], d.header->line), std::move(terms));
}

Rule parse_rule(const KeyValue& kv) {
    // <var>:<term> [and|or <var>:<term>]... -> <term> weight <w>
    const auto tok = split_ws(kv.value);
    Rule rule;
    std::size_t i = 0;
    std::optional<Connective> conn;
    for (;;) {
        if (i >= tok.size()) throw ParseError("rule is missing '->'", kv.line);
        const auto colon = tok[i].find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == tok[i].size())
            throw ParseError("expected '<variable>:<term>', got '" + tok[i] + "'", kv.line);
        rule.antecedents.push_back({tok[i].substr(0, colon), tok[i].substr(colon + 1)});
        ++i;
        if (i < tok.size() && tok[i] == "->") break;
        if (i >= tok.size() || (tok[i] != "and" && tok[i] != "or"))
            throw ParseError("expected 'and', 'or' or '->'", kv.line);
        const Connective c = tok[i] == "and" ? Connective::And : Connective::Or;
        if (conn && *conn != c) throw ParseError("mixed connectives in one rule", kv.line);
        conn = c;
        ++i;
    }
    ++i;  // "->"
    if (i + 3 != tok.size() || tok[i + 1] != "weight")
        throw ParseError("expected '-> <term> weight <w>'", kv.line);
    rule.connective = conn.value_or(Connective::And);
    rule.consequent = tok[i];
    rule.weight = parse_double(tok[i + 2], kv.line);
    return rule;
}

}  // namespace

std::string render_fuzzy_systems(const std::vector<FuzzySystem>& systems) {
    std::ostringstream out;
    out << "# fuzzy inference systems: " << systems.size() << '\n';
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const FuzzySystem& sys = systems[s];
        const std::string p = "system." + std::to_string(s + 1);
        out << '\n';
        out << p << ".name = " << sys.name() << '\n';
        const fuzzy::Operators& ops = sys.operators();
        out << p << ".and = " << (ops.and_op == fuzzy::AndOp::Min ? "min" : "product") << '\n';
        out << p << ".implication = "
            << (ops.implication == Implication::Clip ? "clip" : "scale") << '\n';
        out << p << ".aggregation = "
            << (ops.aggregation == fuzzy::Aggregation::Max ? "max" : "sum") << '\n';
        out << p << ".resolution = " << sys.resolution() << '\n';
        render_variable(out, p + ".input1", sys.input1());
        render_variable(out, p + ".input2", sys.input2());
        render_variable(out, p + ".output", sys.output());
        for (std::size_t r = 0; r < sys.rules().size(); ++r) {
            const Rule& rule = sys.rules()[r];
            out << p << ".rule." << r + 1 << " = ";
            for (std::size_t a = 0; a < rule.antecedents.size(); ++a) {
                if (a > 0) out << (rule.connective == Connective::And ? " and " : " or ");
                out << rule.antecedents[a].variable << ':' << rule.antecedents[a].term;
            }
            out << " -> " << rule.consequent << " weight " << format_exact(rule.weight) << '\n';
        }
    }
    return out.str();
}

std::vector<FuzzySystem> parse_fuzzy_systems(std::string_view text) {
    std::map<int, SystemDraft> drafts;
    for (const auto& kv : parse_key_values(text)) {
        std::vector<std::string> parts;
        std::size_t b = 0;
        for (std::size_t e; (e = kv.key.find('.', b)) != std::string::npos; b = e + 1)
            parts.push_back(kv.key.substr(b, e - b));
        parts.push_back(kv.key.substr(b));

        if (parts.size() < 3 || parts[0] != "system")
            throw ParseError("unexpected key '" + kv.key + "'", kv.line);
        SystemDraft& d = drafts[parse_index(parts[1], kv.line)];
        const std::string& field = parts[2];

        auto variable = [&](VariableDraft& v) {
            if (parts.size() == 3) v.header = kv;
            else if (parts.size() == 5 && parts[3] == "term")
                v.terms.emplace(parse_index(parts[4], kv.line), kv);
            else throw ParseError("unexpected key '" + kv.key + "'", kv.line);
        };

        if (parts.size() == 3 && field == "name") d.name = kv;
        else if (parts.size() == 3 && field == "and") d.and_op = kv;
        else if (parts.size() == 3 && field == "implication") d.implication = kv;
        else if (parts.size() == 3 && field == "aggregation") d.aggregation = kv;
        else if (parts.size() == 3 && field == "resolution") d.resolution = kv;
        else if (field == "input1") variable(d.in1);
        else if (field == "input2") variable(d.in2);
        else if (field == "output") variable(d.out);
        else if (parts.size() == 4 && field == "rule")
            d.rules.emplace(parse_index(parts[3], kv.line), kv);
        else throw ParseError("unexpected key '" + kv.key + "'", kv.line);
    }

    std::vector<FuzzySystem> out;
    for (const auto& [idx, d] : drafts) {
        const std::string where = "system." + std::to_string(idx);
        if (!d.name) throw ValidationError(where + ": missing name");
        fuzzy::Operators ops;
        ops.and_op = parse_choice(d.and_op, "min", fuzzy::AndOp::Min, "product",
                                  fuzzy::AndOp::Product, "and");
        ops.implication = parse_choice(d.implication, "clip", Implication::Clip, "scale",
                                       Implication::Scale, "implication");
        ops.aggregation = parse_choice(d.aggregation, "max", fuzzy::Aggregation::Max, "sum",
                                       fuzzy::Aggregation::Sum, "aggregation");
        std::size_t resolution = fuzzy::kDefaultResolution;
        if (d.resolution) resolution = parse_index(d.resolution->value, d.resolution->line);
        std::vector<Rule> rules;
        for (const auto& [r, kv] : d.rules) rules.push_back(parse_rule(kv));
        out.emplace_back(d.name->value, build_variable(d.in1, where + ".input1"),
                         build_variable(d.in2, where + ".input2"),
                         build_variable(d.out, where + ".output"), std::move(rules), ops,
                         resolution);
    }
    return out;
}

}  // namespace nanogrid
