#include "dulac/corpus.hpp"

namespace dulac {

namespace {

ParamEnv positives(std::initializer_list<const char*> names, const Rational& lo,
                   const Rational& hi) {
    ParamEnv env;
    for (const char* n : names) env.params[n] = ParamInfo{SignAssumption::Positive, lo, hi};
    return env;
}

Region posquad(const Rational& lo, const Rational& hi) {
    Region r;
    r.kind = RegionKind::PositiveQuadrantBox;
    r.x1_lo = lo;
    r.x1_hi = hi;
    r.x2_lo = lo;
    r.x2_hi = hi;
    return r;
}

Region box(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    Region r;
    r.kind = RegionKind::Box;
    r.x1_lo = a;
    r.x1_hi = b;
    r.x2_lo = c;
    r.x2_hi = d;
    return r;
}

std::vector<CorpusEntry> build() {
    std::vector<CorpusEntry> v;

    {
        CorpusEntry e;
        e.name = "sis";
        e.note = "epidemic compartment model";
        e.f1 = "lambda - mu*x1 - alpha*x2";
        e.f2 = "beta*(x1 - x2)*x2 - (alpha + mu + delta)*x2";
        e.env = positives({"lambda", "mu", "alpha", "beta", "delta"}, 1, 1);
        e.region = posquad(Rational(1, 10), 10);
        e.expected_family = "single-var-2";
        e.expected_h = "1/x2";
        e.expected_c = "-mu - beta*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "lv-harvest";
        e.note = "competing species with proportional harvesting";
        e.f1 = "x1*(r1 - k1*x1 - b12*x2) - h1*x1";
        e.f2 = "x2*(r2 - k2*x2 - b21*x1) - h2*x2";
        e.env = positives({"r1", "k1", "b12", "h1", "r2", "k2", "b21", "h2"}, Rational(1, 2), 2);
        e.region = posquad(Rational(1, 10), 10);
        e.expected_family = "product-z";
        e.expected_h = "1/(x1*x2)";
        e.expected_c = "-k1*x1 - k2*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "linear-combo";
        e.note = "shared linear factor in both equations";
        e.f1 = "(a1*x1 + a2*x2)*(b1 + b2*x2 + s1*x1)";
        e.f2 = "(a1*x1 + a2*x2)*(b3 + b4*x1 + s2*x2)";
        e.env = positives({"a1", "a2", "b1", "b2", "b3", "b4", "s1", "s2"}, 1, 1);
        e.region = box(1, 10, Rational(-1, 2), 10);
        e.expected_family = "sum-z";
        e.expected_h = "1/(x1 + x2)";
        e.expected_c = "a1*(b1 + b2*x2 + s1*x1) + s1*(a1*x1 + a2*x2)"
                       " + a2*(b3 + b4*x1 + s2*x2) + s2*(a1*x1 + a2*x2)"
                       " - (a1*x1 + a2*x2)*(b1 + b2*x2 + s1*x1 + b3 + b4*x1 + s2*x2)/(x1 + x2)";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "separable-4";
        e.note = "both equations factor into single-variable pieces";
        e.f1 = "x1*(1 + x2^2)";
        e.f2 = "(1 + x1^2)*x2";
        e.region = posquad(Rational(1, 100), 100);
        e.expected_family = "single-var-1";
        e.expected_h = "1/x1";
        e.expected_c = "x1^2 + 1";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "separable-5";
        e.note = "first equation factors; second splits additively";
        e.f1 = "x1*x2";
        e.f2 = "x1 + x2^2";
        e.region = posquad(Rational(1, 100), 100);
        e.expected_family = "single-var-1";
        e.expected_h = "1/x1";
        e.expected_c = "2*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "prop21";
        e.note = "pair of independent logistic equations";
        e.f1 = "x1*(a1 - x1)";
        e.f2 = "x2*(a2 - x2)";
        e.env = positives({"a1", "a2"}, 1, 1);
        e.region = posquad(Rational(1, 100), 100);
        e.expected_family = "single-var-1";
        e.expected_h = "1/x1^2";
        e.expected_c = "a2 - a1 - 2*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "mutualism-facultative";
        e.note = "facultative mutualism with saturating carrying capacities";
        e.f1 = "r1*x1*(1 - x1/(k1 + b12*x2))";
        e.f2 = "r2*x2*(1 - x2/(k2 + b21*x1))";
        e.env = positives({"r1", "r2", "k1", "k2", "b12", "b21"}, 1, 1);
        e.region = posquad(Rational(1, 10), 10);
        e.expected_family = "single-var-1";
        e.expected_h = "1/x1^2";
        e.expected_c = "r2 - r1 - 2*r2*x2/(k2 + b21*x1)";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "graves";
        e.note = "mutualism model with exponential response terms";
        e.f1 = "x1*((r1 + (r11 - r1)*(1 - exp(-k1*x2))) - a1*x1)";
        e.f2 = "x2*((r2 + (r22 - r2)*(1 - exp(-k2*x1))) - a2*x2)";
        e.env = positives({"r1", "r2", "a1", "a2", "k1", "k2"}, 1, 1);
        e.env.params["r11"] = ParamInfo{SignAssumption::Positive, 2, 2};
        e.env.params["r22"] = ParamInfo{SignAssumption::Positive, 2, 2};
        e.region = posquad(Rational(1, 10), 10);
        e.expected_family = "product-z";
        e.expected_h = "1/(x1*x2)";
        e.expected_c = "-a1*x1 - a2*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "gopalsamy";
        e.note = "mutualism model with rational response terms";
        e.f1 = "r1*x1*((k1 + a1*x2)/(1 + x2) - x1)";
        e.f2 = "r2*x2*((k2 + a2*x1)/(1 + x1) - x2)";
        e.env = positives({"r1", "r2", "k1", "k2"}, 1, 1);
        e.env.params["a1"] = ParamInfo{SignAssumption::Positive, 2, 2};
        e.env.params["a2"] = ParamInfo{SignAssumption::Positive, 2, 2};
        e.region = posquad(Rational(1, 10), 10);
        e.expected_family = "product-z";
        e.expected_h = "1/(x1*x2)";
        e.expected_c = "-r1*x1 - r2*x2";
        v.push_back(e);
    }
    {
        CorpusEntry e;
        e.name = "vanderpol";
        e.note = "relaxation oscillator with a limit cycle in the region";
        e.f1 = "x2";
        e.f2 = "mu*(1 - x1^2)*x2 - x1";
        e.env = positives({"mu"}, 1, 1);
        e.region = box(-3, 3, -3, 3);
        v.push_back(e);
    }
    return v;
}

} // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build();
    return entries;
}

const CorpusEntry* corpus_find(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return &e;
    return nullptr;
}

InputFile corpus_input(const CorpusEntry& e) {
    InputFile in;
    in.f1_text = e.f1;
    in.f2_text = e.f2;
    in.field.f1 = parse_expr(e.f1);
    in.field.f2 = parse_expr(e.f2);
    in.env = e.env;
    in.region = e.region;
    in.has_region = true;
    return in;
}

} // namespace dulac
