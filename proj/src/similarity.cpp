#include "cpat/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "cpat/tree_diff.hpp"

namespace cpat {

namespace {

double delta_with(const ATerm& a, const ATerm& b, MatchScorer& scorer) {
    std::size_t score = scorer.score(a, b);
    std::size_t den = std::max(a.size(), b.size());
    return static_cast<double>(score) / static_cast<double>(den);
}

} // namespace

double delta(const ATerm& a, const ATerm& b) {
    MatchScorer scorer;
    return delta_with(a, b, scorer);
}

const char* side_rule_name(SideRule rule) {
    return rule == SideRule::Before ? "before" : "after";
}

const ATerm& rep_tree(const Change& c, SideRule rule) {
    switch (c.kind) {
        case ChangeKind::Insertion: return c.context_after.value();
        case ChangeKind::Deletion: return c.context_before.value();
        case ChangeKind::Mutation:
            return rule == SideRule::After ? c.context_after.value()
                                           : c.context_before.value();
    }
    return c.context_after.value();
}

std::string change_id(ChangeKind kind, std::size_t index) {
    char letter = 'I';
    if (kind == ChangeKind::Deletion) letter = 'D';
    else if (kind == ChangeKind::Mutation) letter = 'M';
    std::string num = std::to_string(index);
    if (num.size() < 4) num.insert(0, 4 - num.size(), '0');
    return letter + num;
}

DistanceMatrix distance_matrix(const std::vector<Change>& changes, ChangeKind kind,
                               SideRule rule, std::vector<std::string> ids) {
    const std::size_t n = changes.size();
    DistanceMatrix m;
    m.kind = kind;
    if (ids.empty()) {
        m.items.reserve(n);
        for (std::size_t i = 0; i < n; ++i) m.items.push_back(change_id(kind, i));
    } else {
        assert(ids.size() == n);
        m.items = std::move(ids);
    }

    std::vector<const ATerm*> reps;
    reps.reserve(n);
    for (const Change& c : changes) {
        assert(c.kind == kind);
        reps.push_back(&rep_tree(c, rule));
    }

    m.values.assign(n * n, 1.0);
    auto fill_row = [&](std::size_t i, MatchScorer& scorer) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = delta_with(*reps[i], *reps[j], scorer);
            m.values[i * n + j] = v;
            m.values[j * n + i] = v;
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, n);
    if (n < 16 || workers <= 1) {
        MatchScorer scorer;
        for (std::size_t i = 0; i < n; ++i) fill_row(i, scorer);
        return m;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            MatchScorer scorer;
            for (std::size_t i = w; i < n; i += workers) fill_row(i, scorer);
        });
    }
    for (std::thread& t : pool) t.join();
    return m;
}

BoolMatrix boolean_matrix(const DistanceMatrix& d, double tau) {
    BoolMatrix b;
    b.items = d.items;
    b.values.resize(d.values.size());
    for (std::size_t k = 0; k < d.values.size(); ++k)
        b.values[k] = d.values[k] >= tau ? 1 : 0;
    return b;
}

BoolMatrix combine_boolean(const std::vector<BoolMatrix>& parts,
                           std::vector<std::string> full_items) {
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> where;
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (std::size_t k = 0; k < parts[p].items.size(); ++k)
            where.emplace(parts[p].items[k], std::make_pair(p, k));

    const std::size_t n = full_items.size();
    BoolMatrix all;
    all.items = std::move(full_items);
    all.values.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto wi = where.find(all.items[i]);
        if (wi == where.end()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            auto wj = where.find(all.items[j]);
            if (wj == where.end() || wj->second.first != wi->second.first) continue;
            const BoolMatrix& part = parts[wi->second.first];
            all.values[i * n + j] =
                part.at(wi->second.second, wj->second.second) ? 1 : 0;
        }
    }
    return all;
}

std::vector<ChangeGroup> threshold_groups(const DistanceMatrix& d, double tau) {
    const std::size_t n = d.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d.at(i, j) >= tau) parent[find(i)] = find(j);

    std::unordered_map<std::size_t, std::size_t> group_of_root;
    std::vector<ChangeGroup> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = find(i);
        auto [it, inserted] = group_of_root.try_emplace(root, groups.size());
        if (inserted) groups.push_back(ChangeGroup{d.kind, {}, tau});
        groups[it->second].members.push_back(d.items[i]);
    }
    return groups;
}

std::vector<SweepRow> sweep_group_counts(const std::vector<Change>& changes,
                                         const std::vector<double>& taus, SideRule rule) {
    static constexpr ChangeKind kinds[] = {ChangeKind::Insertion, ChangeKind::Deletion,
                                           ChangeKind::Mutation};
    std::vector<DistanceMatrix> matrices;
    for (ChangeKind kind : kinds) {
        std::vector<Change> of_kind;
        for (const Change& c : changes)
            if (c.kind == kind) of_kind.push_back(c);
        DistanceMatrix m =
            of_kind.empty() ? DistanceMatrix{kind, {}, {}}
                            : distance_matrix(of_kind, kind, rule);
        matrices.push_back(std::move(m));
    }

    std::vector<SweepRow> rows;
    rows.reserve(taus.size());
    for (double tau : taus) {
        SweepRow row{tau, 0, 0, 0, 0};
        std::size_t counts[3] = {0, 0, 0};
        for (int k = 0; k < 3; ++k)
            if (matrices[k].size() > 0)
                counts[k] = threshold_groups(matrices[k], tau).size();
        row.insertions = counts[0];
        row.deletions = counts[1];
        row.mutations = counts[2];
        row.total = counts[0] + counts[1] + counts[2];
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string join_items(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    out += "\n";
    return out;
}

std::string format_six(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string to_csv(const DistanceMatrix& m) {
    std::string out = join_items(m.items);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ",";
            out += format_six(m.at(i, j));
        }
        out += "\n";
    }
    return out;
}

std::string to_csv(const BoolMatrix& m) {
    std::string out = join_items(m.items);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ",";
            out += m.at(i, j) ? "1" : "0";
        }
        out += "\n";
    }
    return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "tau,insertions,deletions,mutations,total\n";
    for (const SweepRow& r : rows) {
        out += format_six(r.tau);
        out += "," + std::to_string(r.insertions);
        out += "," + std::to_string(r.deletions);
        out += "," + std::to_string(r.mutations);
        out += "," + std::to_string(r.total);
        out += "\n";
    }
    return out;
}

} // namespace cpat
