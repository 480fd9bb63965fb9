#include "deldyn/hodge.hpp"

#include "deldyn/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace deldyn {

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << "/" << r.denominator();
    return out.str();
}

}  // namespace

FractionalPreHodge make_profile(std::vector<HodgeEntry> raw) {
    std::sort(raw.begin(), raw.end());
    FractionalPreHodge h;
    for (auto& e : raw) {
        if (e.dim == 0) continue;
        if (!h.entries.empty() && h.entries.back().p == e.p && h.entries.back().q == e.q)
            h.entries.back().dim += e.dim;
        else
            h.entries.push_back(e);
    }
    return h;
}

long long total_dim(const FractionalPreHodge& h) {
    long long d = 0;
    for (const auto& e : h.entries) d += e.dim;
    return d;
}

std::optional<std::string> check_conjugation_symmetry(const FractionalPreHodge& h) {
    std::map<std::pair<Rat, Rat>, long long> at;
    for (const auto& e : h.entries) at[{e.p, e.q}] += e.dim;
    for (const auto& [pq, d] : at) {
        auto it = at.find({pq.second, pq.first});
        long long mirror = it == at.end() ? 0 : it->second;
        if (mirror != d)
            return "dim at (" + rat_str(pq.first) + "," + rat_str(pq.second) + ") is " +
                   std::to_string(d) + " but " + std::to_string(mirror) + " at the mirror";
    }
    return std::nullopt;
}

std::map<Rat, long long> weight_profile(const FractionalPreHodge& h) {
    std::map<Rat, long long> w;
    for (const auto& e : h.entries) w[e.p + e.q] += e.dim;
    return w;
}

bool is_pure(const FractionalPreHodge& h, const Rat& weight) {
    for (const auto& e : h.entries)
        if (e.p + e.q != weight) return false;
    return true;
}

bool is_classical(const FractionalPreHodge& h) {
    for (const auto& e : h.entries)
        if (e.p.denominator() != 1 || e.q.denominator() != 1) return false;
    return true;
}

FractionalPreHodge tensor(const FractionalPreHodge& a, const FractionalPreHodge& b) {
    std::vector<HodgeEntry> raw;
    raw.reserve(a.entries.size() * b.entries.size());
    for (const auto& x : a.entries)
        for (const auto& y : b.entries) raw.push_back({x.p + y.p, x.q + y.q, x.dim * y.dim});
    return make_profile(std::move(raw));
}

std::optional<std::string> validate_module(const EtaleModule& m) {
    if (m.n_points < 0) return std::string("negative point count");
    if (static_cast<int>(m.bideg.size()) != m.n_points ||
        static_cast<int>(m.rank.size()) != m.n_points)
        return std::string("bidegree/rank lists do not match the point count");
    for (long long r : m.rank)
        if (r < 1) return std::string("rank below 1");
    if (m.conj) {
        if (m.conj->degree() != m.n_points) return std::string("conjugation degree mismatch");
        for (int i = 0; i < m.n_points; ++i) {
            int j = (*m.conj)(i);
            if ((*m.conj)(j) != i) return std::string("conjugation is not an involution");
            if (m.bideg[j].first != m.bideg[i].second || m.bideg[j].second != m.bideg[i].first)
                return std::string("conjugation does not swap bidegrees at point " +
                                   std::to_string(i));
            if (m.rank[j] != m.rank[i])
                return std::string("conjugation changes the rank at point " + std::to_string(i));
        }
    }
    return std::nullopt;
}

bool cm_rank_one(const EtaleModule& m) {
    for (long long r : m.rank)
        if (r != 1) return false;
    return true;
}

FractionalPreHodge module_profile(const EtaleModule& m) {
    std::vector<HodgeEntry> raw;
    raw.reserve(m.bideg.size());
    for (int i = 0; i < m.n_points; ++i)
        raw.push_back({m.bideg[i].first, m.bideg[i].second, m.rank[i]});
    return make_profile(std::move(raw));
}

std::optional<FractionalPreHodge> tensor_over_etale(const EtaleModule& m,
                                                    const std::vector<FractionalPreHodge>& v) {
    if (static_cast<int>(v.size()) != m.n_points) return std::nullopt;
    std::vector<HodgeEntry> raw;
    for (int i = 0; i < m.n_points; ++i)
        for (const auto& e : v[i].entries)
            raw.push_back({e.p + m.bideg[i].first, e.q + m.bideg[i].second, e.dim * m.rank[i]});
    return make_profile(std::move(raw));
}

std::optional<std::string> validate_cover(const EquivariantDiagram& e, const QuadraticCover& F) {
    int m = e.comp_count();
    if (F.gens.size() != e.gens.size())
        return std::string("cover has " + std::to_string(F.gens.size()) + " generators, expected " +
                           std::to_string(e.gens.size()));
    std::vector<PairedPerm> pairs;
    for (std::size_t i = 0; i < F.gens.size(); ++i) {
        if (F.gens[i].degree() != 2 * m)
            return std::string("cover generator " + std::to_string(i) + " has the wrong degree");
        Perm cp = component_perm(e.diagram, e.gens[i]);
        for (int x = 0; x < 2 * m; ++x)
            if (cover_base(F.gens[i](x)) != cp(cover_base(x)))
                return std::string("cover generator " + std::to_string(i) +
                                   " does not lie over the component action");
        pairs.push_back({e.gens[i], F.gens[i]});
    }
    if (paired_closure(pairs, e.diagram.total_nodes, 2 * m).size() != e.group.order())
        return std::string("cover generators do not satisfy the group's relations");
    return std::nullopt;
}

namespace {

// Sheet twists encode a lift: generator i sends (c, s) to (cp_i(c), s xor
// t[i][c]).  Conjugating by a sheet flip u changes t[i][c] into
// t[i][c] xor u[c] xor u[cp_i(c)]; covers are deduplicated by taking the
// lexicographically least twist table over all 2^m flips.
std::vector<std::vector<int>> flip_conjugate(const std::vector<std::vector<int>>& t,
                                             const std::vector<Perm>& cps,
                                             const std::vector<int>& u) {
    auto out = t;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t c = 0; c < t[i].size(); ++c)
            out[i][c] = t[i][c] ^ u[c] ^ u[cps[i](static_cast<int>(c))];
    return out;
}

}  // namespace

std::vector<QuadraticCover> enumerate_covers(const EquivariantDiagram& e) {
    int m = e.comp_count();
    int k = static_cast<int>(e.gens.size());
    std::vector<Perm> cps;
    for (const auto& g : e.gens) cps.push_back(component_perm(e.diagram, g));

    std::vector<QuadraticCover> out;
    std::vector<std::vector<int>> t(k, std::vector<int>(m, 0));
    auto lift = [&](int i) {
        std::vector<int> img(2 * m);
        for (int c = 0; c < m; ++c)
            for (int s = 0; s < 2; ++s) img[2 * c + s] = 2 * cps[i](c) + (s ^ t[i][c]);
        return Perm(std::move(img));
    };

    long long total = 1LL << (k * m);
    for (long long code = 0; code < total; ++code) {
        long long bits = code;
        for (int i = 0; i < k; ++i)
            for (int c = 0; c < m; ++c) {
                t[i][c] = static_cast<int>(bits & 1);
                bits >>= 1;
            }

        // keep only flip-canonical twist tables
        bool canonical = true;
        for (long long f = 1; canonical && f < (1LL << m); ++f) {
            std::vector<int> u(m);
            for (int c = 0; c < m; ++c) u[c] = static_cast<int>((f >> c) & 1);
            if (flip_conjugate(t, cps, u) < t) canonical = false;
        }
        if (!canonical) continue;

        QuadraticCover F;
        for (int i = 0; i < k; ++i) F.gens.push_back(lift(i));
        if (!validate_cover(e, F)) out.push_back(std::move(F));
    }
    return out;
}

namespace {

std::vector<int> muless_components(const DeligneDynkin& d) {
    std::vector<char> has_mu(d.base.comp_count(), 0);
    for (int v : d.mu) has_mu[d.base.diagram.comp_of(v)] = 1;
    std::vector<int> out;
    for (int c = 0; c < d.base.comp_count(); ++c)
        if (!has_mu[c]) out.push_back(c);
    return out;
}

}  // namespace

std::optional<std::string> validate_phi(const DeligneDynkin& d, const QuadraticCover& F,
                                        const PartialCMType& phi) {
    if (auto err = validate_cover(d.base, F)) return err;
    int m = d.base.comp_count();
    std::set<int> seen;
    std::vector<int> hit(m, 0);
    for (int p : phi.phi) {
        if (p < 0 || p >= 2 * m) return std::string("cover point out of range");
        if (!seen.insert(p).second) return std::string("repeated cover point");
        ++hit[cover_base(p)];
    }
    for (int p : phi.phi)
        if (seen.count(cover_conj(p)))
            return std::string("phi meets its own conjugate over component " +
                               std::to_string(cover_base(p)));
    std::vector<char> has_mu(m, 1);
    for (int c : muless_components(d)) has_mu[c] = 0;
    for (int c = 0; c < m; ++c) {
        if (!has_mu[c] && hit[c] != 1)
            return std::string("phi must cover mu-less component " + std::to_string(c) +
                               " exactly once");
        if (has_mu[c] && hit[c] != 0)
            return std::string("phi covers component " + std::to_string(c) +
                               " which mu already meets");
    }
    if (!std::is_sorted(phi.phi.begin(), phi.phi.end()))
        return std::string("phi is not sorted");
    return std::nullopt;
}

std::vector<PartialCMType> enumerate_phis(const DeligneDynkin& d, const QuadraticCover& F) {
    if (validate_cover(d.base, F)) return {};
    auto muless = muless_components(d);
    std::vector<PartialCMType> out;
    long long total = 1LL << muless.size();
    for (long long code = 0; code < total; ++code) {
        PartialCMType phi;
        for (std::size_t i = 0; i < muless.size(); ++i)
            phi.phi.push_back(2 * muless[i] + static_cast<int>((code >> i) & 1));
        out.push_back(std::move(phi));
    }
    return out;
}

std::variant<DeligneReport, DeligneError> deligne_construct(const DeligneDynkin& d,
                                                            const QuadraticCover& F,
                                                            const PartialCMType& phi,
                                                            long long multiplicity) {
    auto input = [](std::string msg) { return DeligneError{false, std::move(msg)}; };
    auto internal = [](std::string msg) { return DeligneError{true, std::move(msg)}; };

    if (multiplicity < 1) return input("multiplicity must be at least 1");
    if (auto err = validate(d)) return input(*err);
    if (!is_irreducible(d)) return input("diagram is not irreducible");
    if (!is_populated(d)) return input("diagram is not populated");
    if (!is_symplectic(d)) return input("diagram is not symplectic");
    if (auto err = validate_phi(d, F, phi)) return input(*err);

    const Diagram& dg = d.base.diagram;
    const long long n = multiplicity;
    DeligneReport rep;
    rep.multiplicity = n;
    rep.s_nodes = symplectic_set(d);

    // which mu-node governs each component, if any
    std::vector<int> mu_of_comp(d.base.comp_count(), -1);
    for (int v : d.mu) mu_of_comp[dg.comp_of(v)] = v;

    for (int s : rep.s_nodes) {
        int alpha = mu_of_comp[dg.comp_of(s)];
        if (alpha < 0) {
            rep.r.push_back(std::nullopt);
            rep.v_of_s.push_back(make_profile({{Rat(0), Rat(0), n}}));
            continue;
        }
        auto rv = pairing(dg, alpha, s);
        if (!rv) return internal("pairing undefined between a mu node and a symplectic node");
        rep.r.push_back(*rv);
        rep.v_of_s.push_back(make_profile({{*rv, -*rv, n}, {*rv - Rat(1), Rat(1) - *rv, n}}));
    }

    // F_S: bidegree (1-r, r) where mu acts, (0,0) on mu-less components;
    // conjugation is the opposition involution, which preserves S and
    // exchanges r with 1-r there.
    std::map<int, int> s_index;
    for (std::size_t i = 0; i < rep.s_nodes.size(); ++i) s_index[rep.s_nodes[i]] = static_cast<int>(i);
    Perm tau = opposition_involution(dg);
    rep.f_s.n_points = static_cast<int>(rep.s_nodes.size());
    std::vector<int> fs_conj(rep.s_nodes.size());
    for (std::size_t i = 0; i < rep.s_nodes.size(); ++i) {
        if (rep.r[i])
            rep.f_s.bideg.push_back({Rat(1) - *rep.r[i], *rep.r[i]});
        else
            rep.f_s.bideg.push_back({Rat(0), Rat(0)});
        rep.f_s.rank.push_back(1);
        auto it = s_index.find(tau(rep.s_nodes[i]));
        if (it == s_index.end())
            return internal("opposition involution does not preserve the symplectic set");
        fs_conj[i] = it->second;
    }
    rep.f_s.conj = Perm(std::move(fs_conj));
    if (auto err = validate_module(rep.f_s)) return internal("F_S: " + *err);

    // F: (1,0) on phi, (0,1) on the conjugate of phi, (0,0) elsewhere.
    int m = d.base.comp_count();
    std::set<int> in_phi(phi.phi.begin(), phi.phi.end());
    rep.f.n_points = 2 * m;
    std::vector<int> f_conj(2 * m);
    for (int p = 0; p < 2 * m; ++p) {
        if (in_phi.count(p))
            rep.f.bideg.push_back({Rat(1), Rat(0)});
        else if (in_phi.count(cover_conj(p)))
            rep.f.bideg.push_back({Rat(0), Rat(1)});
        else
            rep.f.bideg.push_back({Rat(0), Rat(0)});
        rep.f.rank.push_back(1);
        f_conj[p] = cover_conj(p);
    }
    rep.f.conj = Perm(std::move(f_conj));
    if (auto err = validate_module(rep.f)) return internal("F: " + *err);

    // W_F = F tensor F_S, fibered over the component set: a point per
    // (cover point, symplectic node) pair lying over the same component.
    std::map<std::pair<int, int>, int> w_index;
    for (std::size_t i = 0; i < rep.s_nodes.size(); ++i) {
        int c = dg.comp_of(rep.s_nodes[i]);
        for (int sheet = 0; sheet < 2; ++sheet) {
            int p = 2 * c + sheet;
            w_index[{p, static_cast<int>(i)}] = static_cast<int>(rep.w_points.size());
            rep.w_points.push_back({p, static_cast<int>(i)});
            rep.w_f.bideg.push_back({rep.f.bideg[p].first + rep.f_s.bideg[i].first,
                                     rep.f.bideg[p].second + rep.f_s.bideg[i].second});
            rep.w_f.rank.push_back(1);
        }
    }
    rep.w_f.n_points = static_cast<int>(rep.w_points.size());
    std::vector<int> w_conj(rep.w_points.size());
    for (std::size_t j = 0; j < rep.w_points.size(); ++j) {
        auto [p, i] = rep.w_points[j];
        w_conj[j] = w_index.at({cover_conj(p), (*rep.f_s.conj)(i)});
    }
    rep.w_f.conj = Perm(std::move(w_conj));
    if (auto err = validate_module(rep.w_f)) return internal("W_F: " + *err);
    if (!is_pure(module_profile(rep.w_f), Rat(1)))
        return internal("W_F is not pure of weight 1");
    if (!cm_rank_one(rep.f) || !cm_rank_one(rep.f_s) || !cm_rank_one(rep.w_f))
        return internal("a CM-type module came out with rank above 1");

    // V' = W_F tensor V over F_S, via the projection (p, i) -> i.
    std::vector<FractionalPreHodge> v_over_w;
    v_over_w.reserve(rep.w_points.size());
    for (const auto& [p, i] : rep.w_points) v_over_w.push_back(rep.v_of_s[i]);
    auto vp = tensor_over_etale(rep.w_f, v_over_w);
    if (!vp) return internal("W_F and V ended up over different point sets");
    rep.v_prime = std::move(*vp);

    const Rat zero(0), one(1);
    for (const auto& e : rep.v_prime.entries)
        if (!((e.p == one && e.q == zero) || (e.p == zero && e.q == one)))
            return internal("V' has a bidegree outside {(1,0),(0,1)}");
    if (auto err = check_conjugation_symmetry(rep.v_prime)) return internal("V': " + *err);
    rep.dim_v_prime = total_dim(rep.v_prime);
    if (rep.dim_v_prime % 2 != 0) return internal("V' has odd dimension");
    rep.abelian_dim = rep.dim_v_prime / 2;
    return rep;
}

}  // namespace deldyn
