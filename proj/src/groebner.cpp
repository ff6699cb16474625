#include "eqz/groebner.hpp"

namespace eqz {

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& basis) { return basis.normal_form(p); }

bool ideal_membership(const MultiPoly& p, const std::vector<MultiPoly>& gens) {
    if (p.is_zero()) return true;
    return buchberger(gens, MonomialOrder::grevlex(), p.vars()).contains(p);
}

GroebnerBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& keep) {
    if (gens.empty()) return GroebnerBasis(VarList(keep), MonomialOrder::grevlex(), {});
    const VarList& vars = gens.front().vars();
    std::vector<bool> elim(vars.size(), true);
    for (const auto& k : keep) elim[vars.index_of(k)] = false;
    // keep the original relative order of the kept variables
    std::vector<std::string> ordered;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!elim[i]) ordered.push_back(vars[i]);
    const VarList kept(ordered);

    auto gb = buchberger(gens, MonomialOrder::elimination(elim), vars);
    std::vector<MultiPoly> out;
    for (const auto& g : gb.generators()) {
        bool pure = true;
        for (const auto& [e, c] : g.terms())
            for (std::size_t i = 0; i < e.size() && pure; ++i)
                if (elim[i] && e[i] != 0) pure = false;
        if (!pure) continue;
        MultiPoly r(kept);
        for (const auto& [e, c] : g.terms()) {
            Exponent ne;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (!elim[i]) ne.push_back(e[i]);
            r.add_term(ne, c);
        }
        out.push_back(std::move(r));
    }
    // The survivors are a Gröbner basis for the induced grevlex order.
    return buchberger(out, MonomialOrder::grevlex(), kept);
}

GroebnerBasis saturate(const std::vector<MultiPoly>& gens, const MultiPoly& f,
                       const MonomialOrder& order) {
    if (f.is_zero()) throw std::domain_error("saturate: f must be nonzero");
    const VarList& vars = f.vars();
    std::string t = "_sat";
    while (vars.find(t)) t += "_";
    std::vector<std::string> ext{t};
    for (const auto& v : vars) ext.push_back(v);
    const VarList big(ext);

    std::vector<MultiPoly> lifted;
    for (const auto& g : gens) {
        if (!(g.vars() == vars)) throw StructuralError("saturate: variable-list mismatch");
        lifted.push_back(g.embed(big));
    }
    lifted.push_back(MultiPoly::variable(big, 0) * f.embed(big) - MultiPoly::constant(big, 1));
    auto elim = eliminate(lifted, vars.names());
    std::vector<MultiPoly> back;
    for (const auto& g : elim.generators()) back.push_back(g.embed(vars));
    if (order.kind() == MonomialOrder::Kind::GradedRevLex)
        return GroebnerBasis(vars, order, back);
    return buchberger(back, order, vars);
}

bool same_ideal(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
    if (a.empty() && b.empty()) return true;
    const VarList vars = a.empty() ? b.front().vars() : a.front().vars();
    return buchberger(a, MonomialOrder::grevlex(), vars) == buchberger(b, MonomialOrder::grevlex(), vars);
}

std::vector<Exponent> monomials_of_weighted_degree(const std::vector<int>& weights, long degree) {
    for (int w : weights)
        if (w <= 0) throw StructuralError("monomial enumeration needs positive weights");
    std::vector<Exponent> out;
    if (degree < 0) return out;
    Exponent cur(weights.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i + 1 == weights.size()) {
            if (left % weights[i] == 0) {
                cur[i] = static_cast<int>(left / weights[i]);
                out.push_back(cur);
            }
            return;
        }
        for (long k = left / weights[i]; k >= 0; --k) {
            cur[i] = static_cast<int>(k);
            rec(i + 1, left - k * weights[i]);
        }
        cur[i] = 0;
    };
    if (weights.empty()) {
        if (degree == 0) out.push_back({});
        return out;
    }
    rec(0, degree);
    return out;
}

GradedQuotient::GradedQuotient(GroebnerBasis basis, WeightedGrading grading)
    : basis_(std::move(basis)), grading_(std::move(grading)) {
    if (grading_.weights.size() != basis_.vars().size())
        throw StructuralError("grading arity mismatch");
    for (const auto& g : basis_.generators())
        if (!g.weighted_degree(grading_))
            throw StructuralError("inhomogeneous generator: " + g.str());
}

std::vector<Exponent> GradedQuotient::standard_monomials(long d) const {
    std::vector<Exponent> out;
    for (auto& e : monomials_of_weighted_degree(grading_.weights, d))
        if (basis_.is_standard(e)) out.push_back(std::move(e));
    return out;
}

long hilbert_function(const GradedQuotient& q, long d) {
    if (d < 0) throw std::domain_error("hilbert_function: negative degree");
    return static_cast<long>(q.standard_monomials(d).size());
}

}  // namespace eqz
