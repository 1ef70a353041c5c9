#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>

#include "euclid_match/exact.hpp"

namespace euclid_match {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense primal-dual blossom matching, O(n^3).
//
// Minimization is reduced to maximum-weight matching on transformed weights
// w' = K - w with K = max(w) + 1: all w' are positive, so on a complete
// graph with even n every maximum-weight matching is perfect, and among
// perfect matchings maximizing sum(w') minimizes sum(w).
//
// Nodes 1..n are the vertices, n+1..2n are blossom slots (0 is the null
// node). The alternating forest is grown from all free top-level nodes at
// once; each phase ends with one augmentation. Edges between shrunken nodes
// are represented by their original endpoints in eu_/ev_. Since weights are
// doubles, "tight" means a slack below eps_, and the final matching is
// checked against a complementary-slackness certificate.
class BlossomSolver {
public:
    explicit BlossomSolver(const WeightMatrix& wm) : wm_(&wm), n_(static_cast<int>(wm.size())) {
        N_ = 2 * n_ + 1;
        double k_shift = wm.max_weight() + 1.0;
        wt_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0.0);
        max_wt_ = 0.0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) {
                if (u == v) continue;
                double w = k_shift - wm.at(u - 1, v - 1);
                wt_[static_cast<std::size_t>(u) * (n_ + 1) + v] = w;
                max_wt_ = std::max(max_wt_, w);
            }
        eps_ = 1e-12 * std::max(1.0, max_wt_);

        lab_.assign(N_, 0.0);
        for (int u = 1; u <= n_; ++u) lab_[u] = 0.5 * max_wt_;
        match_.assign(N_, 0);
        slack_.assign(N_, 0);
        st_.assign(N_, 0);
        pa_.assign(N_, 0);
        S_.assign(N_, -1);
        vis_.assign(N_, 0);
        flower_.assign(N_, {});
        for (int x = 1; x <= n_; ++x) st_[x] = x;
        nx_ = n_;

        eu_.assign(static_cast<std::size_t>(N_) * N_, 0);
        ev_.assign(static_cast<std::size_t>(N_) * N_, 0);
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v)
                if (u != v) {
                    eu_[cell(u, v)] = static_cast<std::uint16_t>(u);
                    ev_[cell(u, v)] = static_cast<std::uint16_t>(v);
                }
        ffrom_.assign(static_cast<std::size_t>(n_) * (n_ + 1), 0);
    }

    ExactResult run(bool check_certificate) {
        while (matching_phase()) {
        }
        for (int u = 1; u <= n_; ++u)
            if (!match_[u] || match_[match_[u]] != u)
                throw std::runtime_error("blossom: no perfect matching found");
        if (check_certificate) verify_certificate();

        ExactResult res;
        res.length = 0.0;
        for (int u = 1; u <= n_; ++u)
            if (u < match_[u]) {
                res.matching.pairs.emplace_back(static_cast<Index>(u - 1),
                                                static_cast<Index>(match_[u] - 1));
                res.length += wm_->at(u - 1, match_[u] - 1);
            }
        res.matching.normalize();
        return res;
    }

private:
    std::size_t cell(int x, int y) const { return static_cast<std::size_t>(x) * N_ + y; }

    double wprime(int u, int v) const {
        return wt_[static_cast<std::size_t>(u) * (n_ + 1) + v];
    }

    double delta_orig(int u, int v) const { return lab_[u] + lab_[v] - wprime(u, v); }

    // Slack of the stored representative edge between nodes x and y.
    double delta_cell(int x, int y) const {
        int a = eu_[cell(x, y)];
        if (!a) return kInf;
        return delta_orig(a, ev_[cell(x, y)]);
    }

    int ffrom(int xs, int x) const {
        if (xs <= n_) return xs == x ? xs : 0;
        return ffrom_[static_cast<std::size_t>(xs - n_ - 1) * (n_ + 1) + x];
    }
    void set_ffrom(int b, int x, int val) {
        ffrom_[static_cast<std::size_t>(b - n_ - 1) * (n_ + 1) + x] =
            static_cast<std::uint16_t>(val);
    }

    void update_slack(int u, int x) {
        if (!slack_[x] || delta_cell(u, x) < delta_cell(slack_[x], x)) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (st_[u] != x && S_[st_[u]] == 0 && eu_[cell(u, x)]) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int y : flower_[x]) q_push(y);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int y : flower_[x]) set_st(y, b);
    }

    // Rotation offset that puts xr at an even position on the blossom cycle.
    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                                  flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = ev_[cell(u, v)];
        if (u <= n_) return;
        int a = eu_[cell(u, v)];
        int xr = ffrom(u, a);
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            v = xnv;
            u = st_[pa_[xnv]];
        }
    }

    int get_lca(int u, int v) {
        ++vis_stamp_;
        while (u || v) {
            if (u) {
                if (vis_[u] == vis_stamp_) return u;
                vis_[u] = vis_stamp_;
                u = st_[match_[u]];
                if (u) u = st_[pa_[u]];
            }
            std::swap(u, v);
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= nx_ && st_[b]) ++b;
        if (b > nx_) ++nx_;
        if (b >= N_) throw std::logic_error("blossom: node slots exhausted");

        lab_[b] = 0.0;
        S_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u; x != lca;) {
            flower_[b].push_back(x);
            int y = st_[match_[x]];
            flower_[b].push_back(y);
            q_push(y);
            x = st_[pa_[y]];
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v; x != lca;) {
            flower_[b].push_back(x);
            int y = st_[match_[x]];
            flower_[b].push_back(y);
            q_push(y);
            x = st_[pa_[y]];
        }
        set_st(b, b);

        for (int x = 1; x <= nx_; ++x) {
            eu_[cell(b, x)] = ev_[cell(b, x)] = 0;
            eu_[cell(x, b)] = ev_[cell(x, b)] = 0;
        }
        for (int x = 1; x <= n_; ++x) set_ffrom(b, x, 0);
        for (int xs : flower_[b]) {
            for (int x = 1; x <= nx_; ++x)
                if (eu_[cell(b, x)] == 0 || delta_cell(xs, x) < delta_cell(b, x)) {
                    eu_[cell(b, x)] = eu_[cell(xs, x)];
                    ev_[cell(b, x)] = ev_[cell(xs, x)];
                    eu_[cell(x, b)] = eu_[cell(x, xs)];
                    ev_[cell(x, b)] = ev_[cell(x, xs)];
                }
            for (int x = 1; x <= n_; ++x)
                if (ffrom(xs, x)) set_ffrom(b, x, xs);
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int child : flower_[b]) set_st(child, child);
        int xr = ffrom(b, eu_[cell(b, pa_[b])]);
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i];
            int xns = flower_[b][i + 1];
            pa_[xs] = eu_[cell(xns, xs)];
            S_[xs] = 1;
            S_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S_[xr] = 1;
        pa_[xr] = pa_[b];
        for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
            int xs = flower_[b][i];
            S_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
        flower_[b].clear();
    }

    // Returns true when the phase augmented.
    bool on_found_edge(int a, int c) {
        int u = st_[a], v = st_[c];
        if (S_[v] == -1) {
            pa_[v] = a;
            S_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            S_[nu] = 0;
            q_push(nu);
        } else if (S_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching_phase() {
        std::fill(S_.begin(), S_.end(), -1);
        std::fill(slack_.begin(), slack_.end(), 0);
        q_.clear();
        bool any_free = false;
        for (int x = 1; x <= nx_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                S_[x] = 0;
                q_push(x);
                any_free = true;
            }
        if (!any_free) return false;

        long guard = 0;
        for (;;) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (S_[st_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v) {
                    if (v == u || st_[u] == st_[v]) continue;
                    double d = delta_orig(u, v);
                    if (d <= eps_) {
                        if (on_found_edge(u, v)) return true;
                    } else {
                        update_slack(u, st_[v]);
                    }
                }
            }

            double d = kInf;
            for (int v = 1; v <= n_; ++v)
                if (S_[st_[v]] == 0) d = std::min(d, lab_[v]);
            for (int b = n_ + 1; b <= nx_; ++b)
                if (st_[b] == b && S_[b] == 1) d = std::min(d, 0.5 * lab_[b]);
            for (int x = 1; x <= nx_; ++x) {
                if (st_[x] != x || !slack_[x]) continue;
                double dd = delta_cell(slack_[x], x);
                if (S_[x] == -1)
                    d = std::min(d, dd);
                else if (S_[x] == 0)
                    d = std::min(d, 0.5 * dd);
            }
            d = std::max(d, 0.0);

            for (int v = 1; v <= n_; ++v) {
                if (S_[st_[v]] == 0)
                    lab_[v] -= d;
                else if (S_[st_[v]] == 1)
                    lab_[v] += d;
            }
            for (int b = n_ + 1; b <= nx_; ++b) {
                if (st_[b] != b) continue;
                if (S_[b] == 0)
                    lab_[b] += 2.0 * d;
                else if (S_[b] == 1)
                    lab_[b] -= 2.0 * d;
            }

            // A free-tree vertex dual at zero means a maximum matching would
            // leave it exposed; on a complete graph with positive transformed
            // weights this only happens once the matching is perfect.
            for (int v = 1; v <= n_; ++v)
                if (S_[st_[v]] == 0 && lab_[v] <= eps_) return false;

            for (int x = 1; x <= nx_; ++x) {
                if (st_[x] != x || !slack_[x]) continue;
                int su = slack_[x];
                if (st_[su] == x) {
                    slack_[x] = 0;
                    continue;
                }
                if (delta_cell(su, x) <= eps_)
                    if (on_found_edge(su, ev_[cell(su, x)])) return true;
            }
            for (int b = n_ + 1; b <= nx_; ++b)
                if (st_[b] == b && S_[b] == 1 && lab_[b] <= eps_) expand_blossom(b);

            if (++guard > 20L * n_ + 1000)
                throw std::runtime_error("blossom: dual adjustment made no progress");
        }
    }

    // Complementary slackness for the transformed maximization:
    //   (i)  every pair has nonnegative slack
    //            lab[u] + lab[v] + sum of z over blossoms containing both
    //            - w'(u,v) >= -tol,
    //   (ii) matched pairs are tight,
    //   (iii) blossoms with positive dual are full (floor(|B|/2) matched
    //         pairs inside), with z >= -tol throughout.
    // Together with perfection this certifies a minimum-weight perfect
    // matching under the original weights.
    void verify_certificate() const {
        double tol = 1e-7 * std::max(1.0, max_wt_);

        // Chains of live blossoms per vertex, outermost first. A slot is live
        // iff its flower is nonempty (expansion clears it), and every live
        // blossom sits under exactly one live top-level node.
        std::vector<std::vector<int>> chain(n_ + 1);
        std::vector<int> stack_blossoms;
        std::vector<std::pair<int, int>> walk;  // (node, ancestor depth)
        for (int b = n_ + 1; b <= nx_; ++b) {
            if (st_[b] != b || flower_[b].empty()) continue;
            stack_blossoms.clear();
            walk.clear();
            walk.emplace_back(b, 0);
            while (!walk.empty()) {
                auto [x, depth] = walk.back();
                walk.pop_back();
                stack_blossoms.resize(depth);
                if (x <= n_) {
                    chain[x] = stack_blossoms;
                    continue;
                }
                stack_blossoms.push_back(x);
                for (int y : flower_[x]) walk.emplace_back(y, depth + 1);
            }
        }

        for (int u = 1; u <= n_; ++u)
            for (int v = u + 1; v <= n_; ++v) {
                double z = 0.0;
                const auto& cu = chain[u];
                const auto& cv = chain[v];
                for (std::size_t i = 0; i < cu.size() && i < cv.size() && cu[i] == cv[i]; ++i)
                    z += lab_[cu[i]];
                double slack = lab_[u] + lab_[v] + z - wprime(u, v);
                if (slack < -tol) throw std::runtime_error("blossom certificate: negative slack");
                if (match_[u] == v && std::abs(slack) > tol)
                    throw std::runtime_error("blossom certificate: matched edge not tight");
            }

        for (int b = n_ + 1; b <= nx_; ++b) {
            if (flower_[b].empty()) continue;
            if (lab_[b] < -tol) throw std::runtime_error("blossom certificate: negative blossom dual");
            if (lab_[b] <= tol) continue;
            std::vector<int> members = blossom_members(b);
            std::vector<char> inside(n_ + 1, 0);
            for (int m : members) inside[m] = 1;
            std::size_t matched_inside = 0;
            for (int m : members)
                if (match_[m] && inside[match_[m]] && m < match_[m]) ++matched_inside;
            if (matched_inside != members.size() / 2)
                throw std::runtime_error("blossom certificate: positive-dual blossom not full");
        }
    }

    std::vector<int> blossom_members(int b) const {
        std::vector<int> out;
        std::vector<int> walk{b};
        while (!walk.empty()) {
            int x = walk.back();
            walk.pop_back();
            if (x <= n_) {
                out.push_back(x);
            } else {
                for (int y : flower_[x]) walk.push_back(y);
            }
        }
        return out;
    }

    const WeightMatrix* wm_;
    int n_, N_, nx_ = 0;
    double max_wt_ = 0.0, eps_ = 0.0;
    std::vector<double> wt_, lab_;
    std::vector<int> match_, slack_, st_, pa_, S_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::uint16_t> eu_, ev_, ffrom_;
    std::deque<int> q_;
    int vis_stamp_ = 0;
};

}  // namespace

ExactResult blossom_mwpm(const WeightMatrix& w, bool check_certificate) {
    Index n = w.size();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("blossom_mwpm requires even n >= 2");
    if (n > 10000) throw CapacityError("blossom_mwpm: instance too large");
    BlossomSolver solver(w);
    return solver.run(check_certificate);
}

}  // namespace euclid_match
