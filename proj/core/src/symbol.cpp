#include "nct/symbol.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace nct {

std::vector<MultiIndex> multi_indices_of_order(int order) {
    std::vector<MultiIndex> out;
    for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b)
            for (int c = 0; a + b + c <= order; ++c)
                out.push_back({a, b, c, order - a - b - c});
    return out;
}

std::string subscript_string(const MultiIndex& m) {
    std::string s;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < m[i]; ++k) s += static_cast<char>('1' + i);
    return s;
}

Atom Atom::exp_h(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("Atom: sign must be +-1");
    return Atom{Kind::ExpH, sign, MultiIndex{}};
}

Atom Atom::delta_exp_h(const MultiIndex& index, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("Atom: sign must be +-1");
    if (index.is_zero()) return exp_h(sign);
    return Atom{Kind::DeltaExpH, sign, index};
}

Atom Atom::delta_h(const MultiIndex& index) {
    if (index.is_zero()) throw std::invalid_argument("Atom: delta^0(h) is not an atom");
    return Atom{Kind::DeltaH, 1, index};
}

namespace {

// delta^a(e^{-h}) expanded over {e^{-h}, delta^b(e^{h})}, memoized by a.
const SymbolExpr& exp_minus_derivative(const MultiIndex& index) {
    static std::map<MultiIndex, SymbolExpr> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(index);
    if (it != cache.end()) return it->second;
    SymbolExpr value = SymbolExpr::atom(Atom::exp_h(-1));
    for (int dir = 1; dir <= 4; ++dir)
        for (int k = 0; k < index[dir - 1]; ++k) value = delta_derive(value, dir);
    return cache.emplace(index, std::move(value)).first->second;
}

Word cancel_exp_pairs(const Word& word) {
    Word stack;
    for (const Atom& a : word) {
        if (!stack.empty() && a.kind == Atom::Kind::ExpH &&
            stack.back().kind == Atom::Kind::ExpH && stack.back().sign == -a.sign) {
            stack.pop_back();
        } else {
            stack.push_back(a);
        }
    }
    return stack;
}

using TermKey = std::tuple<XiPart, Word, bool>;

TermKey term_key(const Term& t) { return {t.xi, t.word, t.coeff.pi2}; }

}  // namespace

SymbolExpr::SymbolExpr(Term term) : SymbolExpr(std::vector<Term>{std::move(term)}) {}

SymbolExpr::SymbolExpr(std::vector<Term> input) {
    std::vector<Term> flat;
    while (!input.empty()) {
        Term t = std::move(input.back());
        input.pop_back();
        if (t.coeff.is_zero()) continue;

        for (Atom& a : t.word)
            if (a.kind == Atom::Kind::DeltaExpH && a.index.is_zero()) a = Atom::exp_h(a.sign);

        auto bad = std::find_if(t.word.begin(), t.word.end(), [](const Atom& a) {
            return a.kind == Atom::Kind::DeltaExpH && a.sign == -1;
        });
        if (bad == t.word.end()) {
            t.word = cancel_exp_pairs(t.word);
            flat.push_back(std::move(t));
            continue;
        }
        // splice in the expansion of delta^a(e^{-h}) and requeue
        const SymbolExpr& expansion = exp_minus_derivative(bad->index);
        Word prefix(t.word.begin(), bad);
        Word suffix(bad + 1, t.word.end());
        for (const Term& e : expansion.terms()) {
            Term nt;
            nt.coeff = t.coeff * e.coeff;
            nt.xi = t.xi;
            nt.word = prefix;
            nt.word.insert(nt.word.end(), e.word.begin(), e.word.end());
            nt.word.insert(nt.word.end(), suffix.begin(), suffix.end());
            input.push_back(std::move(nt));
        }
    }

    std::sort(flat.begin(), flat.end(),
              [](const Term& a, const Term& b) { return term_key(a) < term_key(b); });
    for (Term& t : flat) {
        if (!terms_.empty() && term_key(terms_.back()) == term_key(t)) {
            terms_.back().coeff.q += t.coeff.q;
            if (terms_.back().coeff.is_zero()) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
}

SymbolExpr SymbolExpr::one() { return SymbolExpr(Term{Coeff{1}, XiPart{}, Word{}}); }

SymbolExpr SymbolExpr::atom(const Atom& a) { return SymbolExpr(Term{Coeff{1}, XiPart{}, Word{a}}); }

std::optional<int> SymbolExpr::degree() const {
    std::optional<int> d;
    for (const Term& t : terms_) {
        int td = t.xi.degree();
        if (!d)
            d = td;
        else if (*d != td)
            return std::nullopt;
    }
    return d;
}

SymbolExpr SymbolExpr::operator+(const SymbolExpr& o) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return SymbolExpr(std::move(all));
}

SymbolExpr& SymbolExpr::operator+=(const SymbolExpr& o) {
    *this = *this + o;
    return *this;
}

SymbolExpr SymbolExpr::operator-() const {
    std::vector<Term> all = terms_;
    for (Term& t : all) t.coeff = -t.coeff;
    SymbolExpr r;
    r.terms_ = std::move(all);  // negation preserves normal form
    return r;
}

SymbolExpr SymbolExpr::operator-(const SymbolExpr& o) const { return *this + (-o); }

SymbolExpr SymbolExpr::operator*(const SymbolExpr& o) const {
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : o.terms_) {
            Term t;
            t.coeff = a.coeff * b.coeff;
            t.xi.mono = a.xi.mono + b.xi.mono;
            t.xi.radial = a.xi.radial + b.xi.radial;
            t.word = a.word;
            t.word.insert(t.word.end(), b.word.begin(), b.word.end());
            prod.push_back(std::move(t));
        }
    return SymbolExpr(std::move(prod));
}

SymbolExpr operator*(const Coeff& c, const SymbolExpr& x) {
    std::vector<Term> all = x.terms_;
    for (Term& t : all) t.coeff = t.coeff * c;
    return SymbolExpr(std::move(all));
}

SymbolExpr operator*(const Rational& c, const SymbolExpr& x) { return Coeff{c} * x; }

SymbolExpr delta_derive(const SymbolExpr& x, int direction) {
    const MultiIndex ei = MultiIndex::unit(direction);
    std::vector<Term> out;
    for (const Term& t : x.terms()) {
        for (size_t pos = 0; pos < t.word.size(); ++pos) {
            const Atom& a = t.word[pos];
            // derivative of one atom as (coefficient, replacement word)
            std::vector<std::pair<int, Word>> datom;
            switch (a.kind) {
                case Atom::Kind::ExpH:
                    if (a.sign == 1)
                        datom.push_back({1, {Atom::delta_exp_h(ei, 1)}});
                    else
                        datom.push_back(
                            {-1, {Atom::exp_h(-1), Atom::delta_exp_h(ei, 1), Atom::exp_h(-1)}});
                    break;
                case Atom::Kind::DeltaExpH:
                    datom.push_back({1, {Atom::delta_exp_h(a.index + ei, a.sign)}});
                    break;
                case Atom::Kind::DeltaH:
                    datom.push_back({1, {Atom::delta_h(a.index + ei)}});
                    break;
            }
            for (auto& [sign, repl] : datom) {
                Term nt;
                nt.coeff = sign == 1 ? t.coeff : -t.coeff;
                nt.xi = t.xi;
                nt.word.assign(t.word.begin(), t.word.begin() + pos);
                nt.word.insert(nt.word.end(), repl.begin(), repl.end());
                nt.word.insert(nt.word.end(), t.word.begin() + pos + 1, t.word.end());
                out.push_back(std::move(nt));
            }
        }
    }
    return SymbolExpr(std::move(out));
}

SymbolExpr xi_derive(const SymbolExpr& x, int direction) {
    const int i = direction - 1;
    if (i < 0 || i > 3) throw std::invalid_argument("xi_derive: direction must be 1..4");
    std::vector<Term> out;
    for (const Term& t : x.terms()) {
        if (t.xi.mono[i] > 0) {
            Term nt = t;
            nt.coeff.q *= t.xi.mono[i];
            nt.xi.mono.e[i] -= 1;
            out.push_back(std::move(nt));
        }
        if (t.xi.radial != 0) {
            Term nt = t;
            nt.coeff.q *= 2 * t.xi.radial;
            nt.xi.mono.e[i] += 1;
            nt.xi.radial -= 1;
            out.push_back(std::move(nt));
        }
    }
    return SymbolExpr(std::move(out));
}

SymbolExpr delta_derive(const SymbolExpr& x, const MultiIndex& index) {
    SymbolExpr r = x;
    for (int dir = 1; dir <= 4; ++dir)
        for (int k = 0; k < index[dir - 1]; ++k) r = delta_derive(r, dir);
    return r;
}

SymbolExpr xi_derive(const SymbolExpr& x, const MultiIndex& index) {
    SymbolExpr r = x;
    for (int dir = 1; dir <= 4; ++dir)
        for (int k = 0; k < index[dir - 1]; ++k) r = xi_derive(r, dir);
    return r;
}

// ---------------------------------------------------------------------------
// rendering and serialization

namespace {

std::string rational_latex(const Rational& q) {
    Integer num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    std::string sign = num < 0 ? "-" : "";
    Integer a = abs(num);
    return sign + "\\frac{" + a.str() + "}{" + den.str() + "}";
}

std::string delta_subscripts(const MultiIndex& m) {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (m[i] == 0) continue;
        s += "\\delta_" + std::to_string(i + 1);
        if (m[i] > 1) s += "^{" + std::to_string(m[i]) + "}";
    }
    return s;
}

nlohmann::ordered_json integer_to_json(const Integer& z) {
    static const Integer lo = -(Integer(1) << 53), hi = Integer(1) << 53;
    if (z > lo && z < hi) return z.convert_to<long long>();
    return z.str();
}

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Integer(j.get<std::string>());
    return Integer(j.get<long long>());
}

}  // namespace

std::string Coeff::to_latex() const {
    std::string s = rational_latex(q);
    if (pi2) {
        if (q == 1)
            s = "\\pi^2";
        else if (q == -1)
            s = "-\\pi^2";
        else
            s += "\\pi^2";
    }
    return s;
}

std::string to_latex(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::ExpH:
            return a.sign == 1 ? "e^{h}" : "e^{-h}";
        case Atom::Kind::DeltaExpH:
            return delta_subscripts(a.index) + (a.sign == 1 ? "(e^{h})" : "(e^{-h})");
        case Atom::Kind::DeltaH:
            return delta_subscripts(a.index) + "(h)";
    }
    return {};
}

std::string SymbolExpr::to_latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        std::string c = t.coeff.to_latex();
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c = c.substr(1);
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;

        std::string body;
        for (int i = 0; i < 4; ++i) {
            if (t.xi.mono[i] == 0) continue;
            body += "\\xi_" + std::to_string(i + 1);
            if (t.xi.mono[i] > 1) body += "^{" + std::to_string(t.xi.mono[i]) + "}";
        }
        if (t.xi.radial != 0) body += "|\\xi|^{" + std::to_string(2 * t.xi.radial) + "}";
        for (const Atom& a : t.word) body += nct::to_latex(a);

        if (body.empty())
            os << c;
        else if (c == "1")
            os << body;
        else if (c == "\\pi^2")
            os << "\\pi^2 " << body;
        else
            os << c << " \\, " << body;
    }
    return os.str();
}

nlohmann::ordered_json SymbolExpr::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const Term& t : terms_) {
        nlohmann::ordered_json jt;
        jt["coeff"] = {{"num", integer_to_json(numerator(t.coeff.q))},
                       {"den", integer_to_json(denominator(t.coeff.q))},
                       {"pi2", t.coeff.pi2}};
        jt["xi"] = {{"mono", t.xi.mono.e}, {"radial", t.xi.radial}};
        nlohmann::ordered_json word = nlohmann::ordered_json::array();
        for (const Atom& a : t.word) {
            switch (a.kind) {
                case Atom::Kind::ExpH:
                    word.push_back({{"kind", "exp_h"}, {"sign", a.sign}});
                    break;
                case Atom::Kind::DeltaExpH:
                    word.push_back({{"kind", "delta_exp_h"}, {"index", a.index.e}, {"sign", a.sign}});
                    break;
                case Atom::Kind::DeltaH:
                    word.push_back({{"kind", "delta_h"}, {"index", a.index.e}});
                    break;
            }
        }
        jt["word"] = std::move(word);
        terms.push_back(std::move(jt));
    }
    return nlohmann::ordered_json{{"terms", std::move(terms)}};
}

SymbolExpr SymbolExpr::from_json(const nlohmann::json& j) {
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
        Term t;
        const auto& jc = jt.at("coeff");
        t.coeff.q = Rational(integer_from_json(jc.at("num")), integer_from_json(jc.at("den")));
        t.coeff.pi2 = jc.at("pi2").get<bool>();
        const auto& jx = jt.at("xi");
        auto mono = jx.at("mono").get<std::array<int, 4>>();
        t.xi.mono = MultiIndex{mono[0], mono[1], mono[2], mono[3]};
        t.xi.radial = jx.at("radial").get<int>();
        for (const auto& ja : jt.at("word")) {
            std::string kind = ja.at("kind").get<std::string>();
            if (kind == "exp_h") {
                t.word.push_back(Atom::exp_h(ja.at("sign").get<int>()));
            } else {
                auto idx = ja.at("index").get<std::array<int, 4>>();
                MultiIndex m{idx[0], idx[1], idx[2], idx[3]};
                if (kind == "delta_exp_h")
                    t.word.push_back(Atom::delta_exp_h(m, ja.at("sign").get<int>()));
                else if (kind == "delta_h")
                    t.word.push_back(Atom::delta_h(m));
                else
                    throw std::invalid_argument("SymbolExpr::from_json: unknown atom kind " + kind);
            }
        }
        terms.push_back(std::move(t));
    }
    return SymbolExpr(std::move(terms));
}

}  // namespace nct
