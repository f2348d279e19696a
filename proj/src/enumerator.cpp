#include "qmut/enumerator.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>
#include <functional>
#include <thread>

#include "qmut/classifier.hpp"
#include "qmut/graph.hpp"

namespace qmut {

namespace {

struct Canonical {
    CanonicalForm form;
    ColoredQuiver quiver;
};

Canonical canonicalize(const ColoredQuiver& q) {
    ColoredQuiver c = relabel(q, canonical_labeling(q));
    c.set_names({});
    CanonicalForm f;
    f.m = c.m();
    f.n = c.n();
    f.arrows = c.arrows();
    f.digest = encode_digest(f.m, f.n, f.arrows);
    return {std::move(f), std::move(c)};
}

}  // namespace

bool MutationClass::contains(const ColoredQuiver& q) const {
    if (q.m() != m || q.n() != n) return false;
    return members.count(canonical_form(q).digest) > 0;
}

MutationClass enumerate_class(const ColoredQuiver& seed, const EnumerationOptions& options) {
    require_valid(seed);
    MutationClass cls;
    cls.m = seed.m();
    cls.n = seed.n();
    Canonical root = canonicalize(seed);
    cls.seed_digest = root.form.digest;
    cls.members.emplace(root.form.digest, ClassMember{root.form, root.quiver, 0});
    std::vector<std::string> frontier{root.form.digest};
    const int n = seed.n();
    const int threads = std::max(1, options.threads);
    int depth = 0;
    bool budget_hit = cls.members.size() >= options.max_states;

    while (!frontier.empty() && !budget_hit) {
        if (options.max_depth >= 0 && depth >= options.max_depth) {
            budget_hit = true;
            break;
        }
        std::vector<const ColoredQuiver*> reps;
        for (const auto& d : frontier) reps.push_back(&cls.members.at(d).representative);
        std::vector<std::vector<Canonical>> expanded(reps.size());
        auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                expanded[i].reserve(n);
                for (Vertex v = 0; v < n; ++v) expanded[i].push_back(canonicalize(mutate(*reps[i], v)));
            }
        };
        if (threads == 1 || reps.size() < 2) {
            work(0, reps.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (reps.size() + threads - 1) / threads;
            for (std::size_t b = 0; b < reps.size(); b += chunk)
                pool.emplace_back(work, b, std::min(reps.size(), b + chunk));
            for (auto& t : pool) t.join();
        }

        std::vector<std::string> next;
        for (std::size_t i = 0; i < frontier.size() && !budget_hit; ++i) {
            for (Vertex v = 0; v < n; ++v) {
                Canonical& c = expanded[i][v];
                if (options.record_edges) cls.edges.push_back({frontier[i], v, c.form.digest});
                if (cls.members.count(c.form.digest)) continue;
                if (cls.members.size() >= options.max_states) {
                    budget_hit = true;
                    break;
                }
                next.push_back(c.form.digest);
                cls.members.emplace(next.back(), ClassMember{std::move(c.form), std::move(c.quiver), depth + 1});
            }
        }
        frontier = std::move(next);
        ++depth;
    }
    cls.exhausted = !budget_hit;
    std::sort(cls.edges.begin(), cls.edges.end());
    return cls;
}

double generation_estimate(int n, int m) { return std::pow(2.0 * m + 3.0, n * (n - 1) / 2.0); }

std::map<std::string, ColoredQuiver> generate_all_members(int p, int q, int m, double budget) {
    if (p < 1 || q < 1 || m < 1) throw std::invalid_argument("generation needs p, q, m >= 1");
    const int n = p + q;
    const double estimate = generation_estimate(n, m);
    if (estimate > budget)
        throw std::length_error(fmt::format("generation infeasible: about {:.3g} states exceed the budget {:.3g}",
                                            estimate, budget));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    // Option 0: no arrows; 1..m+1: one arrow of color o-1; m+2..2m+2: two arrows of color o-m-2.
    const int options = 2 * m + 3;
    std::map<std::string, ColoredQuiver> found;
    ColoredQuiver cur(m, n);
    const auto target = std::make_pair(p, q);
    // Class members carry at most one doubled pair, so the search never places a second one.
    std::function<void(std::size_t, bool)> rec = [&](std::size_t at, bool used_double) {
        if (at == pairs.size()) {
            if (!UnderlyingGraph(cur).connected()) return;
            if (!check_Qmpq(cur, target).member) return;
            Canonical c = canonicalize(cur);
            found.emplace(c.form.digest, std::move(c.quiver));
            return;
        }
        auto [i, j] = pairs[at];
        for (int o = 0; o < options; ++o) {
            bool dbl = o >= m + 2;
            if (dbl && used_double) continue;
            if (o == 0) cur.set_pair(i, j, 0, 0);
            else if (!dbl) cur.set_pair(i, j, o - 1, 1);
            else cur.set_pair(i, j, o - m - 2, 2);
            rec(at + 1, used_double || dbl);
        }
        cur.set_pair(i, j, 0, 0);
    };
    rec(0, false);
    return found;
}

TheoremReport verify_theorem_A(int p, int q, int m, const EnumerationOptions& options) {
    TheoremReport r;
    r.p = p;
    r.q = q;
    r.m = m;
    EnumerationOptions opts = options;
    opts.record_edges = false;
    MutationClass cls = enumerate_class(build_A_tilde(p, q, m), opts);
    auto structural = generate_all_members(p, q, m);
    r.bfs_size = cls.size();
    r.structural_size = structural.size();
    r.bfs_exhausted = cls.exhausted;
    for (const auto& [d, member] : cls.members)
        if (!structural.count(d)) r.only_in_bfs.push_back(d);
    for (const auto& [d, quiver] : structural)
        if (!cls.members.count(d)) r.only_in_structural.push_back(d);
    return r;
}

ClassStatistics class_statistics(const MutationClass& cls, int p, int q) {
    ClassStatistics s;
    s.members = cls.size();
    s.edges = cls.edges.size();
    for (const auto& [d, member] : cls.members) {
        s.max_depth = std::max(s.max_depth, member.depth);
        const ColoredQuiver& rep = member.representative;
        int arrows = 0;
        for (const Arrow& a : rep.half_arrows()) arrows += a.count;
        ++s.arrow_counts[arrows];
        auto v = check_Qmpq(rep, std::make_pair(p, q));
        if (!v.member) {
            ++s.certificate_failures;
            continue;
        }
        const auto& cert = *v.certificate;
        ++s.central_cycles[{cert.cycle.l, cert.cycle.h}];
        int wp = 0, wq = 0;
        for (const auto& per : cert.peripherals) (per.tag == Tag::Wp ? wp : wq) += 1;
        ++s.peripheral_counts[{wp, wq}];
    }
    return s;
}

}  // namespace qmut
