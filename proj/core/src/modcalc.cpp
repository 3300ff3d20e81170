#include "nct/modcalc.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <variant>

#include <nlohmann/json.hpp>

#include "nct/specfun.hpp"

namespace nct {

namespace {

using ArgsKey = std::pair<std::vector<MultiIndex>, bool>;

ArgsKey term_key(const ModTerm& t) { return {t.args, t.coeff.pi2}; }

}  // namespace

ModExpr::ModExpr(std::vector<ModTerm> input) {
    for (ModTerm& t : input) {
        if (t.args.empty() || t.args.size() > 2)
            throw std::invalid_argument("ModTerm: arity must be 1 or 2");
        if (t.coeff.q != 1) {  // fold the rational part into the function
            t.func = t.func * FunExpr::constant(t.coeff.q);
            t.coeff.q = 1;
        }
    }
    std::sort(input.begin(), input.end(),
              [](const ModTerm& a, const ModTerm& b) { return term_key(a) < term_key(b); });
    for (ModTerm& t : input) {
        if (!terms_.empty() && term_key(terms_.back()) == term_key(t)) {
            terms_.back().func += t.func;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const ModTerm& t) { return t.func.is_zero(); });
}

ModExpr ModExpr::operator+(const ModExpr& o) const {
    std::vector<ModTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return ModExpr(std::move(all));
}

// ---------------------------------------------------------------------------
// the rewrite engine

namespace {

struct AppliedFactor {
    FunExpr func;
    std::vector<MultiIndex> args;
};

using MixedFactor = std::variant<Atom, AppliedFactor>;
using MixedWord = std::vector<MixedFactor>;

struct MixedTerm {
    Coeff coeff;
    MixedWord w;
};

bool is_exp_minus(const MixedFactor& f) {
    const Atom* a = std::get_if<Atom>(&f);
    return a && a->kind == Atom::Kind::ExpH && a->sign == -1;
}

enum class Rule { Cancel, Substitute, Merge, Shift };  // precedence order

struct Site {
    Rule rule;
    size_t pos;
};

std::vector<Site> applicable_sites(const MixedWord& w) {
    std::vector<Site> sites;
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        const Atom* a = std::get_if<Atom>(&w[p]);
        const Atom* b = std::get_if<Atom>(&w[p + 1]);
        if (a && b && a->kind == Atom::Kind::ExpH && b->kind == Atom::Kind::ExpH &&
            a->sign == -b->sign)
            sites.push_back({Rule::Cancel, p});
        if (a && b && a->kind == Atom::Kind::ExpH && a->sign == -1 &&
            b->kind == Atom::Kind::DeltaExpH && b->sign == 1)
            sites.push_back({Rule::Substitute, p});
        if (!a && !b) sites.push_back({Rule::Merge, p});
        // shifting e^{-h} past an applied factor would strand a pending
        // substitution partner, so it waits until the next slot is settled
        if (!a && b && b->sign == -1 && b->kind == Atom::Kind::ExpH &&
            (p + 2 == w.size() || std::holds_alternative<AppliedFactor>(w[p + 2])))
            sites.push_back({Rule::Shift, p});
    }
    return sites;
}

std::vector<MixedTerm> apply_site(const MixedTerm& t, const Site& site) {
    auto rebuild = [&](std::vector<std::pair<Rational, std::vector<MixedFactor>>> repls) {
        std::vector<MixedTerm> out;
        for (auto& [scale, repl] : repls) {
            MixedTerm nt;
            nt.coeff = t.coeff;
            nt.coeff.q *= scale;
            nt.w.assign(t.w.begin(), t.w.begin() + site.pos);
            nt.w.insert(nt.w.end(), repl.begin(), repl.end());
            nt.w.insert(nt.w.end(), t.w.begin() + site.pos + 2, t.w.end());
            out.push_back(std::move(nt));
        }
        return out;
    };

    switch (site.rule) {
        case Rule::Cancel:
            return rebuild({{Rational(1), {}}});
        case Rule::Substitute: {
            const Atom& d = std::get<Atom>(t.w[site.pos + 1]);
            const MultiIndex& alpha = d.index;
            if (alpha.order() > 2)
                throw RewriteError(
                    "substitute_exponential_derivatives: delta-order above two on one "
                    "exponential is outside the supported fragment");
            if (alpha.order() == 1)
                return rebuild({{Rational(1), {AppliedFactor{specfun::g1(), {alpha}}}}});
            // |alpha| == 2: split off the two-variable part
            std::vector<int> dirs;
            for (int i = 0; i < 4; ++i)
                for (int c = 0; c < alpha[i]; ++c) dirs.push_back(i + 1);
            int first = dirs[0], second = dirs[1];
            MultiIndex ej = MultiIndex::unit(first), ek = MultiIndex::unit(second);
            if (first == second)
                return rebuild({{Rational(1), {AppliedFactor{specfun::g1(), {alpha}}}},
                                {Rational(2), {AppliedFactor{specfun::g2(), {ej, ek}}}}});
            return rebuild({{Rational(1), {AppliedFactor{specfun::g1(), {alpha}}}},
                            {Rational(1), {AppliedFactor{specfun::g2(), {ej, ek}}}},
                            {Rational(1), {AppliedFactor{specfun::g2(), {ek, ej}}}}});
        }
        case Rule::Merge: {
            const AppliedFactor& f = std::get<AppliedFactor>(t.w[site.pos]);
            const AppliedFactor& g = std::get<AppliedFactor>(t.w[site.pos + 1]);
            if (f.args.size() + g.args.size() > 2)
                throw RewriteError(
                    "substitute_exponential_derivatives: more than two tensor slots");
            AppliedFactor merged;
            merged.func = f.func * g.func.substitute({0, 1}, {1, 0});  // second slot uses t
            merged.args = f.args;
            merged.args.insert(merged.args.end(), g.args.begin(), g.args.end());
            return rebuild({{Rational(1), {std::move(merged)}}});
        }
        case Rule::Shift: {
            AppliedFactor f = std::get<AppliedFactor>(t.w[site.pos]);
            f.func = f.func * (f.args.size() == 1 ? FunExpr::exponential(-1, 0)
                                                  : FunExpr::exponential(-1, -1));
            return rebuild({{Rational(1), {MixedFactor{Atom::exp_h(-1)}, std::move(f)}}});
        }
    }
    throw std::logic_error("apply_site: unreachable");
}

std::string describe_stuck(const MixedWord& w) {
    std::string s = "substitute_exponential_derivatives: word cannot be brought to the "
                    "e^{-h}-prefix normal form (outside the supported fragment):";
    for (const auto& f : w) {
        if (const Atom* a = std::get_if<Atom>(&f))
            s += " " + to_latex(*a);
        else
            s += " [applied]";
    }
    return s;
}

ModExpr rewrite(const NCExpression& x, std::mt19937_64* rng) {
    std::vector<ModTerm> out;
    for (const Term& term : x.terms()) {
        std::vector<MixedTerm> work;
        MixedTerm seed;
        seed.coeff = term.coeff;
        for (const Atom& a : term.word) seed.w.push_back(a);
        work.push_back(std::move(seed));

        while (!work.empty()) {
            MixedTerm t = std::move(work.back());
            work.pop_back();
            std::vector<Site> sites = applicable_sites(t.w);
            if (sites.empty()) {
                if (t.w.size() == 2 && is_exp_minus(t.w[0]) &&
                    std::holds_alternative<AppliedFactor>(t.w[1])) {
                    const AppliedFactor& f = std::get<AppliedFactor>(t.w[1]);
                    out.push_back(ModTerm{t.coeff, f.func, f.args});
                    continue;
                }
                throw RewriteError(describe_stuck(t.w));
            }
            const Site* chosen;
            if (rng) {
                chosen = &sites[(*rng)() % sites.size()];
            } else {
                chosen = &*std::min_element(sites.begin(), sites.end(),
                                            [](const Site& a, const Site& b) {
                                                return std::tie(a.rule, a.pos) <
                                                       std::tie(b.rule, b.pos);
                                            });
            }
            auto produced = apply_site(t, *chosen);
            for (auto& nt : produced) work.push_back(std::move(nt));
        }
    }
    return ModExpr(std::move(out));
}

}  // namespace

ModExpr substitute_exponential_derivatives(const NCExpression& x) { return rewrite(x, nullptr); }

ModExpr substitute_exponential_derivatives_shuffled(const NCExpression& x, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return rewrite(x, &rng);
}

CurvatureFunctions curvature_functions(const ModExpr& m) {
    const auto& terms = m.terms();
    if (terms.size() != 8)
        throw std::invalid_argument("curvature_functions: expected 8 terms (4 directions x 2)");
    std::optional<FunExpr> one, two;
    std::optional<bool> pi2;
    int seen = 0;
    for (int i = 1; i <= 4; ++i) {
        MultiIndex ei = MultiIndex::unit(i);
        for (const ModTerm& t : terms) {
            bool is_second = t.args == std::vector<MultiIndex>{ei + ei};
            bool is_square = t.args == std::vector<MultiIndex>{ei, ei};
            if (!is_second && !is_square) continue;
            ++seen;
            if (pi2 && *pi2 != t.coeff.pi2)
                throw std::invalid_argument("curvature_functions: inconsistent pi^2 factors");
            pi2 = t.coeff.pi2;
            std::optional<FunExpr>& slot = is_second ? one : two;
            if (slot) {
                if (!(*slot == t.func))
                    throw std::invalid_argument(
                        "curvature_functions: directions carry different functions");
            } else {
                slot = t.func;
            }
        }
    }
    if (seen != 8 || !one || !two)
        throw std::invalid_argument("curvature_functions: argument structure is not the "
                                    "curvature shape");
    return {*one, *two, *pi2};
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string args_latex(const std::vector<MultiIndex>& args) {
    std::string s;
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) s += " \\otimes ";
        std::string d;
        for (int dir = 0; dir < 4; ++dir) {
            if (args[i][dir] == 0) continue;
            d += "\\delta_" + std::to_string(dir + 1);
            if (args[i][dir] > 1) d += "^{" + std::to_string(args[i][dir]) + "}";
        }
        s += d + "(h)";
    }
    return s;
}

}  // namespace

std::string ModExpr::to_latex() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const ModTerm& t = terms_[i];
        if (i) s += " + ";
        if (t.coeff.pi2) s += "\\pi^2 ";
        s += "e^{-h}\\,\\Big[" + t.func.to_latex() + "\\Big]";
        s += t.args.size() == 1 ? "(\\nabla)" : "(\\nabla,\\nabla)";
        s += "\\big(" + args_latex(t.args) + "\\big)";
    }
    return s;
}

nlohmann::ordered_json ModExpr::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const ModTerm& t : terms_) {
        nlohmann::ordered_json args = nlohmann::ordered_json::array();
        for (const MultiIndex& a : t.args) args.push_back(a.e);
        terms.push_back({{"coeff",
                          {{"num", 1}, {"den", 1}, {"pi2", t.coeff.pi2}}},
                         {"func", t.func.to_json()},
                         {"args", std::move(args)}});
    }
    return nlohmann::ordered_json{{"terms", std::move(terms)}};
}

}  // namespace nct
