#include "powergenus/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include "powergenus/error.hpp"

namespace pg {

std::string to_string(LowerCertificate c) {
  switch (c) {
    case LowerCertificate::euler_bound: return "euler_bound";
    case LowerCertificate::formula_oracle: return "formula_oracle";
    case LowerCertificate::subgraph_bound: return "subgraph_bound";
    case LowerCertificate::exhaustive_search: return "exhaustive_search";
  }
  return "unknown";
}

std::string GenusResult::describe() const {
  std::ostringstream os;
  if (exact()) os << "exact " << upper;
  else os << "bounds [" << lower << "," << upper << "]";
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint64_t kNoId = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kSplitDepth = 4;

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  std::atomic<std::uint64_t> best_id{kNoId};
  std::uint64_t max_nodes = 0;
  Clock::time_point deadline;
};

// Darts of a simple graph: dart off[v] + i runs from v to neighbors(v)[i].
struct DartIndex {
  explicit DartIndex(const Graph& g) {
    const std::size_t n = g.vertex_count();
    off.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) off[v + 1] = off[v] + g.degree(v);
    darts = off[n];
    tail.resize(darts);
    head.resize(darts);
    rev.resize(darts);
    edge.resize(darts);
    const auto& edges = g.edges();
    for (Vertex v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        std::size_t d = off[v] + i;
        tail[d] = v;
        head[d] = nb[i];
        Graph::Edge e{std::min(v, nb[i]), std::max(v, nb[i])};
        edge[d] = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
      }
    }
    for (std::size_t d = 0; d < darts; ++d) {
      const auto& nb = g.neighbors(head[d]);
      rev[d] = static_cast<int>(off[head[d]] +
                                (std::lower_bound(nb.begin(), nb.end(), tail[d]) - nb.begin()));
    }
  }

  std::size_t darts = 0;
  std::vector<std::size_t> off;
  std::vector<Vertex> tail, head;
  std::vector<int> rev, edge;
};

// One worker of the face-by-face search at a fixed level.
//
// State s = 2 * dart + (orientation < 0). succ/pred hold the partial
// rotation (succ[d] is the dart after d at tail(d)); links at a vertex
// always form vertex-disjoint paths, closed into one cycle by the last link.
class LevelSearch {
 public:
  LevelSearch(const Graph& g, Surface surface, std::size_t level, Shared& shared,
              unsigned worker, unsigned jobs)
      : g_(g), surface_(surface), level_(level), sh_(shared), worker_(worker), jobs_(jobs),
        dx_(g), off_(dx_.off), tail_(dx_.tail), head_(dx_.head), rev_(dx_.rev), edge_(dx_.edge) {
    const std::size_t n = g.vertex_count();
    darts_ = dx_.darts;
    states_ = 2 * darts_;

    succ_.assign(darts_, -1);
    pred_.assign(darts_, -1);
    links_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      int a = static_cast<int>(off_[v]);
      if (g.degree(v) == 1) {
        link(a, a);
      } else if (g.degree(v) == 2) {
        link(a, a + 1);
        link(a + 1, a);
      }
    }

    v0_ = 0;
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) > g.degree(v0_)) v0_ = v;
    if (g.degree(v0_) >= 3) {
      a0_ = static_cast<int>(off_[v0_]);
      a1_ = a0_ + 1;
      a2_ = a0_ + 2;
    }

    sign_.assign(g.edge_count(), surface == Surface::orientable ? 1 : 0);
    if (surface == Surface::nonorientable) {
      // BFS spanning tree edges are +1; switching equivalence frees them.
      std::vector<bool> seen(n, false);
      std::deque<Vertex> q{v0_};
      seen[v0_] = true;
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        for (std::size_t d = off_[v]; d < off_[v + 1]; ++d)
          if (!seen[head_[d]]) {
            seen[head_[d]] = true;
            sign_[edge_[d]] = 1;
            q.push_back(head_[d]);
          }
      }
    }

    for (std::size_t d = off_[v0_]; d < off_[v0_ + 1]; ++d) order_.push_back(d);
    for (std::size_t d = 0; d < darts_; ++d)
      if (tail_[d] != v0_) order_.push_back(d);

    const long long V = static_cast<long long>(n), E = static_cast<long long>(g.edge_count());
    const long long eg = surface == Surface::orientable ? 2 * static_cast<long long>(level)
                                                        : static_cast<long long>(level);
    target_faces_ = E - V + 2 - eg;
    std::size_t gi = girth(g);
    girth_ = gi == kInfiniteGirth ? 1 : static_cast<long long>(gi);
    used_.assign(states_, 0);
  }

  bool run() {
    if (target_faces_ <= 0) target_faces_ = 1;
    int s = first_unused();
    start_ = s;
    open_len_ = 1;
    int marks = enter(s);
    bool r = marks && step(s);
    if (!r && marks) leave(s, marks);
    flush();
    return r;
  }

  bool aborted() const { return aborted_; }
  std::uint64_t found_id() const { return found_id_; }
  const SignedRotationSystem& embedding() const { return embedding_; }

 private:
  void link(int a, int b) {
    succ_[a] = b;
    pred_[b] = a;
    ++links_[tail_[a]];
  }
  void unlink(int a, int b) {
    succ_[a] = -1;
    pred_[b] = -1;
    --links_[tail_[a]];
  }
  int chain_end(int x) const {
    while (succ_[x] >= 0) x = succ_[x];
    return x;
  }
  // Reflection at v0 is broken by requiring a1 before a2 after a0.
  bool v0_canonical() const {
    if (a0_ < 0) return true;
    for (int x = succ_[a2_]; x >= 0 && x != a2_; x = succ_[x]) {
      if (x == a0_) return true;
      if (x == a1_) return false;
    }
    return true;
  }

  int reverse_state(int st) const {
    int d = st / 2;
    int eps = (st & 1) ? -1 : 1;
    int e2 = -eps * sign_[edge_[d]];
    return 2 * rev_[d] + (e2 < 0 ? 1 : 0);
  }

  // Marks st (and its reverse when the sign is known); returns marks made.
  int enter(int st) {
    used_[st] = 1;
    ++used_count_;
    if (sign_[edge_[st / 2]] == 0) return 1;
    int r = reverse_state(st);
    if (used_[r]) {
      used_[st] = 0;
      --used_count_;
      return 0;
    }
    used_[r] = 1;
    ++used_count_;
    return 2;
  }
  void leave(int st, int marks) {
    if (marks == 2) {
      used_[reverse_state(st)] = 0;
      --used_count_;
    }
    used_[st] = 0;
    --used_count_;
  }

  int first_unused() const {
    for (std::size_t d : order_) {
      if (!used_[2 * d]) return static_cast<int>(2 * d);
      if (!used_[2 * d + 1]) return static_cast<int>(2 * d + 1);
    }
    return -1;
  }

  void flush() {
    sh_.nodes.fetch_add(local_nodes_);
    local_nodes_ = 0;
  }
  bool check_budget() {
    flush();
    if (sh_.abort.load() || sh_.nodes.load() > sh_.max_nodes || Clock::now() > sh_.deadline) {
      sh_.abort.store(true);
      aborted_ = true;
    }
    return !aborted_;
  }

  // Work split across workers at a fixed choice depth.
  bool take_branch() {
    if (jobs_ == 1 || depth_ != kSplitDepth) return true;
    std::uint64_t id = split_counter_++;
    if (id % jobs_ != worker_ || id > sh_.best_id.load()) return false;
    current_id_ = id;
    return true;
  }

  bool step(int cur) {
    if ((++local_nodes_ & 0x3FFF) == 0 && !check_budget()) return false;
    if (aborted_) return false;
    int e = edge_[cur / 2];
    if (sign_[e] != 0) return advance(cur);
    ++depth_;
    for (int lam : {1, -1}) {
      if (!take_branch()) continue;
      sign_[e] = static_cast<signed char>(lam);
      int r = reverse_state(cur);
      if (!used_[r]) {
        used_[r] = 1;
        ++used_count_;
        bool ok = advance(cur);
        used_[r] = 0;
        --used_count_;
        if (ok) {
          --depth_;
          return true;
        }
      }
      sign_[e] = 0;
      if (aborted_) break;
    }
    --depth_;
    return false;
  }

  bool advance(int cur) {
    int d = cur / 2;
    int eps = (cur & 1) ? -1 : 1;
    int eps2 = eps * sign_[edge_[d]];
    int r = rev_[d];
    Vertex v = head_[d];
    int forced = eps2 > 0 ? succ_[r] : pred_[r];
    if (forced >= 0) return try_next(2 * forced + (eps2 < 0 ? 1 : 0));

    const int deg = static_cast<int>(g_.degree(v));
    const Vertex home = tail_[start_ / 2];
    int cands[2][64];
    int counts[2] = {0, 0};
    std::vector<int> overflow[2];
    for (std::size_t x = off_[v]; x < off_[v + 1]; ++x) {
      int xi = static_cast<int>(x);
      bool closing;
      if (eps2 > 0) {
        if (pred_[xi] >= 0) continue;
        closing = chain_end(xi) == r;
      } else {
        if (succ_[xi] >= 0) continue;
        closing = chain_end(r) == xi;
      }
      if (closing && links_[v] != deg - 1) continue;
      int pass = (head_[xi] == home || xi == start_ / 2) ? 0 : 1;
      if (counts[pass] < 64) cands[pass][counts[pass]++] = xi;
      else overflow[pass].push_back(xi);
    }

    ++depth_;
    bool found = false;
    for (int pass = 0; pass < 2 && !found && !aborted_; ++pass) {
      std::size_t total = counts[pass] + overflow[pass].size();
      for (std::size_t i = 0; i < total && !found && !aborted_; ++i) {
        int x = i < static_cast<std::size_t>(counts[pass]) ? cands[pass][i]
                                                          : overflow[pass][i - counts[pass]];
        if (!take_branch()) continue;
        int a = eps2 > 0 ? r : x, b = eps2 > 0 ? x : r;
        link(a, b);
        if (v != v0_ || v0_canonical()) found = try_next(2 * x + (eps2 < 0 ? 1 : 0));
        if (!found) unlink(a, b);
      }
    }
    --depth_;
    return found;
  }

  bool try_next(int ns) {
    if (ns == start_) return close_face();
    if (used_[ns]) return false;
    int marks = enter(ns);
    if (!marks) return false;
    ++open_len_;
    bool r = false;
    long long unassigned = (static_cast<long long>(states_) - static_cast<long long>(used_count_)) / 2;
    long long need = std::max(0LL, girth_ - static_cast<long long>(open_len_));
    if (unassigned >= need &&
        static_cast<long long>(closed_) + 1 + (unassigned - need) / girth_ >= target_faces_)
      r = step(ns);
    if (!r) {
      --open_len_;
      leave(ns, marks);
    }
    return r;
  }

  bool close_face() {
    ++closed_;
    int saved_start = start_;
    std::size_t saved_len = open_len_;
    bool r = false;
    if (used_count_ == states_) {
      r = complete();
    } else {
      long long unassigned =
          (static_cast<long long>(states_) - static_cast<long long>(used_count_)) / 2;
      if (static_cast<long long>(closed_) + unassigned / girth_ >= target_faces_) {
        int s = first_unused();
        start_ = s;
        open_len_ = 1;
        int marks = enter(s);
        if (marks) {
          r = step(s);
          if (!r) leave(s, marks);
        }
      }
    }
    if (!r) {
      start_ = saved_start;
      open_len_ = saved_len;
      --closed_;
    }
    return r;
  }

  bool complete() {
    const long long V = static_cast<long long>(g_.vertex_count());
    const long long E = static_cast<long long>(g_.edge_count());
    const long long eg = 2 - V + E - static_cast<long long>(closed_);
    bool orientable = std::all_of(sign_.begin(), sign_.end(), [](signed char s) { return s > 0; });
    bool accept;
    if (surface_ == Surface::orientable) {
      accept = eg <= 2 * static_cast<long long>(level_);
    } else {
      accept = orientable ? eg <= static_cast<long long>(level_) - 1
                          : eg <= static_cast<long long>(level_);
    }
    if (!accept) return false;
    const std::size_t n = g_.vertex_count();
    embedding_.rotation.order.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
      if (g_.degree(v) == 0) continue;
      int a = static_cast<int>(off_[v]);
      int x = a;
      do {
        embedding_.rotation.order[v].push_back(head_[x]);
        x = succ_[x];
      } while (x != a);
    }
    embedding_.signs.assign(sign_.begin(), sign_.end());
    found_id_ = (jobs_ > 1 && depth_ > kSplitDepth) ? current_id_ : split_counter_;
    std::uint64_t prev = sh_.best_id.load();
    while (found_id_ < prev && !sh_.best_id.compare_exchange_weak(prev, found_id_)) {
    }
    return true;
  }

  const Graph& g_;
  Surface surface_;
  std::size_t level_;
  Shared& sh_;
  unsigned worker_, jobs_;

  DartIndex dx_;
  const std::vector<std::size_t>& off_;
  const std::vector<Vertex>& tail_;
  const std::vector<Vertex>& head_;
  const std::vector<int>& rev_;
  const std::vector<int>& edge_;
  std::size_t darts_ = 0, states_ = 0;
  std::vector<int> succ_, pred_, links_;
  std::vector<signed char> sign_;
  std::vector<char> used_;
  std::vector<std::size_t> order_;
  std::size_t used_count_ = 0;

  Vertex v0_ = 0;
  int a0_ = -1, a1_ = -1, a2_ = -1;
  long long target_faces_ = 0;
  long long girth_ = 3;

  std::size_t closed_ = 0;
  int start_ = -1;
  std::size_t open_len_ = 0;

  std::uint64_t local_nodes_ = 0;
  bool aborted_ = false;
  std::size_t depth_ = 0;
  std::uint64_t split_counter_ = 0;
  std::uint64_t current_id_ = 0;
  std::uint64_t found_id_ = kNoId;
  SignedRotationSystem embedding_;
};

// Seeded local search for a low-genus embedding, used only as an upper
// bound. Moves swap two darts in one rotation or flip one cotree sign; a
// move is kept unless it loses more than one face.
class UpperHeuristic {
 public:
  UpperHeuristic(const Graph& g, Surface surface, std::size_t lower)
      : g_(g), surface_(surface), lower_(lower), dx_(g) {
    const std::size_t n = g.vertex_count();
    perm_.resize(n);
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t d = dx_.off[v]; d < dx_.off[v + 1]; ++d) perm_[v].push_back(static_cast<int>(d));
    succ_.assign(dx_.darts, -1);
    pred_.assign(dx_.darts, -1);
    sign_.assign(g.edge_count(), 1);
    seen_.assign(2 * dx_.darts, 0);
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) >= 3) movable_.push_back(v);
    if (surface == Surface::nonorientable) {
      std::vector<bool> tree(g.edge_count(), false), reached(n, false);
      std::deque<Vertex> q{0};
      reached[0] = true;
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        for (std::size_t d = dx_.off[v]; d < dx_.off[v + 1]; ++d)
          if (!reached[dx_.head[d]]) {
            reached[dx_.head[d]] = true;
            tree[dx_.edge[d]] = true;
            q.push_back(dx_.head[d]);
          }
      }
      for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!tree[e]) cotree_.push_back(e);
    }
  }

  /// Best embedding found and its implied genus.
  std::pair<SignedRotationSystem, std::size_t> run(std::size_t evaluations, std::uint32_t seed) {
    std::mt19937 rng(seed);
    const std::size_t restarts = 8;
    const std::size_t per_restart = std::max<std::size_t>(1, evaluations / restarts);
    std::size_t best_value = std::numeric_limits<std::size_t>::max();
    SignedRotationSystem best;
    for (std::size_t r = 0; r < restarts && best_value > lower_; ++r) {
      if (r > 0)
        for (auto& p : perm_) std::shuffle(p.begin(), p.end(), rng);
      std::fill(sign_.begin(), sign_.end(), 1);
      negatives_ = 0;
      for (Vertex v = 0; v < perm_.size(); ++v) rebuild(v);
      long long faces = count_faces();
      for (std::size_t it = 0; it < per_restart; ++it) {
        std::size_t value = implied(faces);
        if (value < best_value) {
          best_value = value;
          best = snapshot();
          if (best_value <= lower_) break;
        }
        bool flip = !cotree_.empty() && (movable_.empty() || rng() % 4 == 0);
        if (flip) {
          std::size_t e = cotree_[rng() % cotree_.size()];
          toggle(e);
          long long f2 = count_faces();
          if (f2 + 1 >= faces && (f2 >= faces || rng() % 16 == 0)) faces = f2;
          else toggle(e);
        } else {
          if (movable_.empty()) break;
          Vertex v = movable_[rng() % movable_.size()];
          auto& p = perm_[v];
          std::size_t i = rng() % p.size(), j = rng() % p.size();
          if (i == j) continue;
          std::swap(p[i], p[j]);
          rebuild(v);
          long long f2 = count_faces();
          if (f2 + 1 >= faces && (f2 >= faces || rng() % 16 == 0)) {
            faces = f2;
          } else {
            std::swap(p[i], p[j]);
            rebuild(v);
          }
        }
      }
      std::size_t value = implied(faces);
      if (value < best_value) {
        best_value = value;
        best = snapshot();
      }
    }
    return {best, best_value};
  }

 private:
  void rebuild(Vertex v) {
    const auto& p = perm_[v];
    for (std::size_t i = 0; i < p.size(); ++i) {
      int a = p[i], b = p[(i + 1) % p.size()];
      succ_[a] = b;
      pred_[b] = a;
    }
  }
  void toggle(std::size_t e) {
    sign_[e] = -sign_[e];
    negatives_ += sign_[e] < 0 ? 1 : -1;
  }
  long long count_faces() {
    std::fill(seen_.begin(), seen_.end(), 0);
    long long orbits = 0;
    for (std::size_t st = 0; st < seen_.size(); ++st) {
      if (seen_[st]) continue;
      ++orbits;
      std::size_t x = st;
      while (!seen_[x]) {
        seen_[x] = 1;
        std::size_t d = x / 2;
        int eps = ((x & 1) ? -1 : 1) * sign_[dx_.edge[d]];
        int r = dx_.rev[d];
        int nd = eps > 0 ? succ_[r] : pred_[r];
        x = 2 * static_cast<std::size_t>(nd) + (eps < 0 ? 1 : 0);
      }
    }
    return orbits / 2;
  }
  std::size_t implied(long long faces) const {
    long long eg = 2 - static_cast<long long>(g_.vertex_count()) +
                   static_cast<long long>(g_.edge_count()) - faces;
    if (eg < 0) eg = 0;
    if (surface_ == Surface::orientable) return static_cast<std::size_t>(eg / 2);
    if (negatives_ > 0) return static_cast<std::size_t>(eg);
    return eg == 0 ? 0 : static_cast<std::size_t>(eg + 1);
  }
  SignedRotationSystem snapshot() const {
    SignedRotationSystem r;
    for (const auto& p : perm_) {
      std::vector<Vertex> o;
      for (int d : p) o.push_back(dx_.head[d]);
      r.rotation.order.push_back(std::move(o));
    }
    r.signs.assign(sign_.begin(), sign_.end());
    return r;
  }

  const Graph& g_;
  Surface surface_;
  std::size_t lower_;
  DartIndex dx_;
  std::vector<std::vector<int>> perm_;
  std::vector<int> succ_, pred_, sign_;
  std::vector<char> seen_;
  std::vector<Vertex> movable_;
  std::vector<std::size_t> cotree_;
  long long negatives_ = 0;
};

SignedRotationSystem default_rotation(const Graph& g) {
  SignedRotationSystem r;
  for (Vertex v = 0; v < g.vertex_count(); ++v) r.rotation.order.push_back(g.neighbors(v));
  r.signs.assign(g.edge_count(), 1);
  return r;
}

// Genus value of an embedding on the requested surface kind.
std::size_t implied_genus(const FaceTrace& t, Surface s) {
  if (s == Surface::orientable || !t.orientable) return t.genus;
  return t.genus == 0 ? 0 : 2 * t.genus + 1;
}

// ---------------------------------------------------------------------------
// Planar pieces hanging off an edge.
//
// If {u,v} separates g, uv is an edge, and a component C of g - {u,v}
// together with u, v induces a planar graph, then C can be drawn inside a
// thin disc along uv in any embedding of the rest. Removing C therefore
// keeps genus and crosscap, and embeddings lift back edge by edge.

struct Peel {
  Vertex u = 0, v = 0;
  std::vector<Vertex> part;  // original ids
};

struct PeelResult {
  std::vector<Vertex> alive;  // sorted original ids of the core
  std::vector<Peel> peels;    // in removal order
};

PeelResult peel_planar_pieces(const Graph& g) {
  PeelResult r;
  std::vector<bool> alive(g.vertex_count(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : g.edges()) {
      if (!alive[u] || !alive[v]) continue;
      // Components of the alive graph minus {u, v}.
      std::vector<int> comp(g.vertex_count(), -1);
      std::vector<std::vector<Vertex>> comps;
      for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (!alive[s] || s == u || s == v || comp[s] != -1) continue;
        comps.emplace_back();
        std::deque<Vertex> q{s};
        comp[s] = static_cast<int>(comps.size() - 1);
        while (!q.empty()) {
          Vertex x = q.front();
          q.pop_front();
          comps.back().push_back(x);
          for (Vertex y : g.neighbors(x))
            if (alive[y] && y != u && y != v && comp[y] == -1) {
              comp[y] = comp[s];
              q.push_back(y);
            }
        }
      }
      if (comps.size() < 2) continue;
      for (auto& c : comps) {
        std::vector<Vertex> vs = c;
        vs.push_back(u);
        vs.push_back(v);
        if (!is_planar(induced(g, vs))) continue;
        std::sort(c.begin(), c.end());
        for (Vertex x : c) alive[x] = false;
        r.peels.push_back({u, v, c});
        changed = true;
      }
      if (changed) break;
    }
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    if (alive[x]) r.alive.push_back(x);
  return r;
}

/// Embedding over original vertex ids; only alive vertices carry rotations.
struct LiftState {
  std::vector<std::vector<Vertex>> rot;
  std::map<Graph::Edge, int> sign;
  std::vector<Vertex> alive;  // sorted

  static Graph::Edge key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

  FaceTrace trace(const Graph& g) const {
    Graph h = induced(g, alive);
    std::vector<Vertex> pos(g.vertex_count(), 0);
    for (std::size_t i = 0; i < alive.size(); ++i) pos[alive[i]] = static_cast<Vertex>(i);
    SignedRotationSystem r;
    r.rotation.order.resize(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i)
      for (Vertex w : rot[alive[i]]) r.rotation.order[i].push_back(pos[w]);
    for (auto [a, b] : h.edges()) r.signs.push_back(sign.at(key(alive[a], alive[b])));
    return trace_faces(h, r);
  }
};

void insert_at(std::vector<Vertex>& order, Vertex anchor, const std::vector<Vertex>& items,
               bool after) {
  auto it = std::find(order.begin(), order.end(), anchor);
  if (after) ++it;
  order.insert(it, items.begin(), items.end());
}

/// Lifts an embedding of the core to all of g, undoing peels in reverse.
SignedRotationSystem lift_embedding(const Graph& g, const PeelResult& pr, const Graph& core,
                                    const SignedRotationSystem& emb) {
  LiftState st;
  st.rot.resize(g.vertex_count());
  st.alive = pr.alive;
  for (std::size_t i = 0; i < pr.alive.size(); ++i)
    for (Vertex w : emb.rotation.order[i]) st.rot[pr.alive[i]].push_back(pr.alive[w]);
  for (std::size_t i = 0; i < core.edge_count(); ++i) {
    auto [a, b] = core.edges()[i];
    st.sign[LiftState::key(pr.alive[a], pr.alive[b])] = emb.signs[i];
  }
  std::size_t faces = st.trace(g).faces;

  for (auto p = pr.peels.rbegin(); p != pr.peels.rend(); ++p) {
    const Vertex u = p->u, v = p->v;
    // Switch v so that uv is positive; faces are unchanged.
    if (st.sign.at(LiftState::key(u, v)) == -1) {
      std::reverse(st.rot[v].begin(), st.rot[v].end());
      for (Vertex w : st.rot[v]) st.sign[LiftState::key(v, w)] *= -1;
    }
    std::vector<Vertex> hv = p->part;
    hv.push_back(u);
    hv.push_back(v);
    std::sort(hv.begin(), hv.end());
    const Graph h = induced(g, hv);
    const auto pl = planarity(h);
    const std::size_t h_faces = h.edge_count() + 2 - h.vertex_count();
    auto local = [&](Vertex x) {
      return static_cast<Vertex>(std::lower_bound(hv.begin(), hv.end(), x) - hv.begin());
    };
    // Neighbours of x inside the piece, starting after `from`.
    auto piece_order = [&](Vertex x, Vertex from, bool mirror) {
      std::vector<Vertex> o;
      for (Vertex w : pl.rotation[local(x)]) o.push_back(hv[w]);
      if (mirror) std::reverse(o.begin(), o.end());
      auto it = std::find(o.begin(), o.end(), from);
      std::rotate(o.begin(), it, o.end());
      o.erase(o.begin());
      return o;
    };

    auto base = st;
    base.alive.insert(base.alive.end(), p->part.begin(), p->part.end());
    std::sort(base.alive.begin(), base.alive.end());
    for (auto [a, b] : h.edges())
      if (!(hv[a] == std::min(u, v) && hv[b] == std::max(u, v)))
        base.sign[LiftState::key(hv[a], hv[b])] = 1;
    bool done = false;
    for (int combo = 0; combo < 8 && !done; ++combo) {
      const bool mirror = combo & 1, after_u = combo & 2, after_v = combo & 4;
      LiftState trial = base;
      for (Vertex x : p->part) {
        trial.rot[x].clear();
        for (Vertex w : pl.rotation[local(x)]) trial.rot[x].push_back(hv[w]);
        if (mirror) std::reverse(trial.rot[x].begin(), trial.rot[x].end());
      }
      insert_at(trial.rot[u], v, piece_order(u, v, mirror), after_u);
      insert_at(trial.rot[v], u, piece_order(v, u, mirror), after_v);
      const auto t = trial.trace(g);
      if (t.faces == faces + h_faces - 1) {
        st = std::move(trial);
        faces = t.faces;
        done = true;
      }
    }
    if (!done) throw InternalContradiction("could not reinsert a planar piece along an edge");
  }

  SignedRotationSystem out;
  out.rotation.order = st.rot;
  for (auto [a, b] : g.edges()) out.signs.push_back(st.sign.at(LiftState::key(a, b)));
  return out;
}

GenusResult run_exact(const Graph& g, Surface surface, const SearchBudget& budget);

/// Solves the core left after peeling and lifts its certificate.
std::optional<GenusResult> run_peeled(const Graph& g, Surface surface, const SearchBudget& budget) {
  const auto pr = peel_planar_pieces(g);
  if (pr.peels.empty()) return std::nullopt;
  const Graph core = induced(g, pr.alive);
  GenusResult res = run_exact(core, surface, budget);
  if (res.upper_certificate) {
    auto lifted = lift_embedding(g, pr, core, *res.upper_certificate);
    const auto t = trace_faces(g, lifted);
    if (implied_genus(t, surface) != res.upper)
      throw InternalContradiction("lifted embedding changed the genus");
    res.upper_certificate = std::move(lifted);
    res.upper_faces = t.faces;
  }
  return res;
}

GenusResult run_exact(const Graph& g, Surface surface, const SearchBudget& budget) {
  if (!is_connected(g)) throw Disconnected("genus search needs a connected graph");
  const auto t0 = Clock::now();
  GenusResult res;
  res.surface = surface;
  auto finish = [&]() {
    res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    res.search_completed = res.lower == res.upper && !res.budget_exhausted;
    return res;
  };

  auto pl = planarity(g);
  if (pl.planar) {
    SignedRotationSystem r{RotationSystem{pl.rotation}, std::vector<int>(g.edge_count(), 1)};
    auto t = trace_faces(g, r);
    if (t.genus != 0) throw InternalContradiction("planar embedding does not trace to genus 0");
    res.upper_certificate = r;
    res.upper_faces = t.faces;
    return finish();
  }

  if (auto peeled = run_peeled(g, surface, budget)) {
    peeled->seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return *peeled;
  }

  res.lower = euler_lower_bound(g, surface);
  res.lower_certificate = LowerCertificate::euler_bound;
  if (budget.use_subgraph_bounds) {
    std::size_t w = clique_number(g);
    std::size_t sb = surface == Surface::orientable ? kn_genus(w) : kn_crosscap(w);
    if (sb > res.lower) {
      res.lower = sb;
      res.lower_certificate = w == g.vertex_count() ? LowerCertificate::formula_oracle
                                                    : LowerCertificate::subgraph_bound;
    }
  }

  auto def = default_rotation(g);
  auto dt = trace_faces(g, def);
  res.upper = implied_genus(dt, surface);
  res.upper_certificate = def;
  res.upper_faces = dt.faces;
  if (res.upper > res.lower) {
    const std::size_t evals = std::clamp<std::size_t>(40'000'000 / (4 * g.edge_count() + 1), 2'000,
                                                      200'000);
    auto [emb, value] = UpperHeuristic(g, surface, res.lower).run(evals, 0x5eed);
    if (value < res.upper) {
      auto t = trace_faces(g, emb);
      if (implied_genus(t, surface) != value)
        throw InternalContradiction("heuristic face count disagrees with face tracing");
      res.upper = value;
      res.upper_certificate = emb;
      res.upper_faces = t.faces;
    }
  }

  for (std::size_t level = res.lower; level < res.upper; ++level) {
    SearchBudget lb = budget;
    if (budget.total_seconds > 0) {
      const double left =
          budget.total_seconds - std::chrono::duration<double>(Clock::now() - t0).count();
      if (left <= 0) {
        res.budget_exhausted = true;
        break;
      }
      lb.max_seconds = std::min(lb.max_seconds, left);
    }
    auto out = search_level(g, surface, level, lb);
    res.nodes += out.nodes;
    if (out.found) {
      auto t = trace_faces(g, *out.embedding);
      res.upper = implied_genus(t, surface);
      res.upper_certificate = out.embedding;
      res.upper_faces = t.faces;
      break;
    }
    if (out.exhausted) {
      // Level k accepts every embedding of genus <= k, so exhaustion is a bound.
      res.lower = level + 1;
      res.lower_certificate = LowerCertificate::exhaustive_search;
      res.search_budget_nodes = budget.max_nodes;
    } else {
      res.budget_exhausted = true;
    }
  }
  return finish();
}

}  // namespace

LevelOutcome search_level(const Graph& g, Surface surface, std::size_t level,
                          const SearchBudget& budget) {
  if (!is_connected(g)) throw Disconnected("genus search needs a connected graph");
  LevelOutcome out;
  if (g.edge_count() == 0) {
    out.found = true;
    out.embedding = default_rotation(g);
    return out;
  }
  Shared sh;
  sh.max_nodes = budget.max_nodes;
  sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(budget.max_seconds));
  const unsigned jobs = std::max(1u, budget.jobs);

  std::vector<std::unique_ptr<LevelSearch>> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.push_back(std::make_unique<LevelSearch>(g, surface, level, sh, w, jobs));
  std::vector<char> found(jobs, 0);
  if (jobs == 1) {
    found[0] = workers[0]->run();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w)
      threads.emplace_back([&, w]() { found[w] = workers[w]->run(); });
    for (auto& t : threads) t.join();
  }

  int best = -1;
  for (unsigned w = 0; w < jobs; ++w)
    if (found[w] && (best < 0 || workers[w]->found_id() < workers[best]->found_id()))
      best = static_cast<int>(w);
  out.nodes = sh.nodes.load();
  if (best >= 0) {
    out.found = true;
    out.embedding = workers[best]->embedding();
  } else {
    out.exhausted = !sh.abort.load();
  }
  return out;
}

GenusResult genus_exact(const Graph& g, const SearchBudget& budget) {
  return run_exact(g, Surface::orientable, budget);
}

GenusResult crosscap_exact(const Graph& g, const SearchBudget& budget) {
  return run_exact(g, Surface::nonorientable, budget);
}

ComposedGenus compose_blocks(const std::vector<std::pair<GenusResult, GenusResult>>& results) {
  std::vector<BlockGenus> b;
  for (const auto& [o, n] : results) {
    if (!o.exact() || !n.exact())
      throw InexactInput("block composition needs exact genus and crosscap for every block");
    b.push_back({o.upper, n.upper});
  }
  return compose_blocks(b);
}

Certificate make_certificate(const Graph& g, const GenusResult& r) {
  if (!r.upper_certificate) throw InvalidParameter("result carries no embedding");
  Certificate c;
  c.surface = r.surface;
  c.claimed_genus = r.upper;
  c.claimed_faces = r.upper_faces;
  c.graph = g;
  c.embedding = *r.upper_certificate;
  return c;
}

}  // namespace pg
