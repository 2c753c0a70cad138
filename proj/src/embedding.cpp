#include "powergenus/embedding.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "powergenus/error.hpp"

namespace pg {

void validate_rotation(const Graph& g, const RotationSystem& r) {
  if (r.order.size() != g.vertex_count())
    throw InvalidRotation("rotation must list every vertex");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto sorted = r.order[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.neighbors(v))
      throw InvalidRotation("rotation at vertex " + std::to_string(v) +
                            " is not a cyclic order of its neighbours");
  }
}

FaceTrace trace_faces(const Graph& g, const RotationSystem& r) {
  SignedRotationSystem s{r, std::vector<int>(g.edge_count(), 1)};
  return trace_faces(g, s);
}

FaceTrace trace_faces(const Graph& g, const SignedRotationSystem& sr) {
  validate_rotation(g, sr.rotation);
  if (sr.signs.size() != g.edge_count()) throw InvalidRotation("one sign per edge is required");
  for (int s : sr.signs)
    if (s != 1 && s != -1) throw InvalidRotation("signs must be +1 or -1");
  if (!is_connected(g)) throw Disconnected("face tracing needs a connected graph");

  const auto& order = sr.rotation.order;
  const std::size_t n = g.vertex_count();
  const auto& edges = g.edges();
  auto sign_of = [&](Vertex a, Vertex b) {
    Graph::Edge e{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    return sr.signs[static_cast<std::size_t>(it - edges.begin())];
  };

  // Dart (v, i) = v -> order[v][i]; dart ids are offset[v] + i.
  std::vector<std::size_t> offset(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) offset[v + 1] = offset[v] + order[v].size();
  const std::size_t darts = offset[n];
  auto position = [&](Vertex v, Vertex w) {
    const auto& o = order[v];
    return static_cast<std::size_t>(std::find(o.begin(), o.end(), w) - o.begin());
  };
  std::vector<Vertex> tail(darts), head(darts);
  std::vector<std::size_t> reverse(darts);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < order[v].size(); ++i) {
      tail[offset[v] + i] = v;
      head[offset[v] + i] = order[v][i];
    }
  for (std::size_t d = 0; d < darts; ++d) reverse[d] = offset[head[d]] + position(head[d], tail[d]);

  // state = 2 * dart + (orientation == -1)
  auto next_state = [&](std::size_t state) {
    std::size_t d = state / 2;
    int s = (state & 1) ? -1 : 1;
    int s2 = s * sign_of(tail[d], head[d]);
    Vertex w = head[d];
    std::size_t deg = order[w].size();
    std::size_t j = reverse[d] - offset[w];
    std::size_t k = s2 > 0 ? (j + 1) % deg : (j + deg - 1) % deg;
    return 2 * (offset[w] + k) + (s2 < 0 ? 1 : 0);
  };
  auto reverse_state = [&](std::size_t state) {
    std::size_t d = state / 2;
    int s = (state & 1) ? -1 : 1;
    int s2 = -s * sign_of(tail[d], head[d]);
    return 2 * reverse[d] + (s2 < 0 ? 1 : 0);
  };

  FaceTrace out;
  if (g.edge_count() == 0) {
    out.faces = 1;
  } else {
    std::vector<int> orbit_of(2 * darts, -1);
    int orbits = 0;
    for (std::size_t st = 0; st < 2 * darts; ++st) {
      if (orbit_of[st] != -1) continue;
      std::size_t x = st;
      do {
        orbit_of[x] = orbits;
        x = next_state(x);
      } while (x != st);
      ++orbits;
    }
    // Pair each orbit with its reverse; one boundary per pair.
    std::vector<bool> listed(orbits, false);
    for (std::size_t st = 0; st < 2 * darts; ++st) {
      int o = orbit_of[st];
      if (listed[o]) continue;
      int ro = orbit_of[reverse_state(st)];
      if (ro == o) throw InvalidRotation("face walk coincides with its own reverse");
      listed[o] = listed[ro] = true;
      std::vector<Vertex> walk;
      std::size_t x = st;
      do {
        walk.push_back(tail[x / 2]);
        x = next_state(x);
      } while (x != st);
      out.boundaries.push_back(std::move(walk));
    }
    out.faces = out.boundaries.size();
    if (static_cast<std::size_t>(orbits) != 2 * out.faces)
      throw InvalidRotation("face orbits do not pair up");
  }

  // Balanced signature <=> orientable.
  std::vector<int> colour(n, 0);
  colour[0] = 1;
  std::vector<Vertex> stack{0};
  bool balanced = true;
  while (!stack.empty() && balanced) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      int want = colour[v] * sign_of(v, w);
      if (colour[w] == 0) {
        colour[w] = want;
        stack.push_back(w);
      } else if (colour[w] != want) {
        balanced = false;
        break;
      }
    }
  }

  out.orientable = balanced;
  out.euler_characteristic = static_cast<long long>(n) - static_cast<long long>(g.edge_count()) +
                             static_cast<long long>(out.faces);
  const long long eg = 2 - out.euler_characteristic;
  if (eg < 0) throw InvalidRotation("euler characteristic exceeds 2");
  out.euler_genus = static_cast<std::size_t>(eg);
  if (out.orientable) {
    if (eg % 2) throw InvalidRotation("orientable embedding with odd euler genus");
    out.genus = out.euler_genus / 2;
  } else {
    out.genus = out.euler_genus;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

void write_certificate(std::ostream& os, const Certificate& c) {
  const Graph& g = c.graph;
  os << "certificate " << (c.surface == Surface::orientable ? "orientable" : "nonorientable")
     << '\n';
  os << "genus " << c.claimed_genus << '\n';
  os << "faces " << c.claimed_faces << '\n';
  write_edge_list(os, g);
  os << "rotation\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    os << v << ':';
    for (Vertex w : c.embedding.rotation.order[v]) os << ' ' << w;
    os << '\n';
  }
  if (c.surface == Surface::nonorientable) {
    os << "signs\n";
    for (std::size_t i = 0; i < c.embedding.signs.size(); ++i)
      os << (i ? " " : "") << (c.embedding.signs[i] > 0 ? "+1" : "-1");
    os << '\n';
  }
}

Certificate read_certificate(std::istream& is) {
  Certificate c;
  std::string line, word;
  auto next = [&](std::string& out) {
    while (std::getline(is, out)) {
      auto p = out.find_first_not_of(" \t\r");
      if (p == std::string::npos || out[p] == '#') continue;
      return true;
    }
    return false;
  };
  auto expect_kv = [&](const std::string& key, std::string& value) {
    if (!next(line)) throw ParseError("certificate: missing '" + key + "'");
    std::istringstream ls(line);
    if (!(ls >> word >> value) || word != key)
      throw ParseError("certificate: expected '" + key + " <value>', got '" + line + "'");
  };
  std::string value;
  expect_kv("certificate", value);
  if (value == "orientable") c.surface = Surface::orientable;
  else if (value == "nonorientable") c.surface = Surface::nonorientable;
  else throw ParseError("certificate: unknown surface '" + value + "'");
  expect_kv("genus", value);
  c.claimed_genus = std::stoul(value);
  expect_kv("faces", value);
  c.claimed_faces = std::stoul(value);

  // Edge list section: header plus m lines.
  std::ostringstream edge_text;
  if (!next(line)) throw ParseError("certificate: missing edge list");
  edge_text << line << '\n';
  std::istringstream hs(line);
  long long n = 0, m = 0;
  if (!(hs >> n >> m)) throw ParseError("certificate: bad edge list header");
  for (long long i = 0; i < m; ++i) {
    if (!next(line)) throw ParseError("certificate: truncated edge list");
    edge_text << line << '\n';
  }
  std::istringstream es(edge_text.str());
  c.graph = read_edge_list(es);

  if (!next(line) || line.find("rotation") == std::string::npos)
    throw ParseError("certificate: missing 'rotation' section");
  c.embedding.rotation.order.assign(c.graph.vertex_count(), {});
  for (std::size_t i = 0; i < c.graph.vertex_count(); ++i) {
    if (!next(line)) throw ParseError("certificate: truncated rotation");
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("certificate: rotation line needs 'v:'");
    std::size_t v = std::stoul(line.substr(0, colon));
    if (v >= c.graph.vertex_count()) throw ParseError("certificate: rotation vertex out of range");
    std::istringstream rs(line.substr(colon + 1));
    long long w;
    while (rs >> w) {
      if (w < 0) throw ParseError("certificate: negative vertex");
      c.embedding.rotation.order[v].push_back(static_cast<Vertex>(w));
    }
  }
  c.embedding.signs.assign(c.graph.edge_count(), 1);
  if (c.surface == Surface::nonorientable) {
    if (!next(line) || line.find("signs") == std::string::npos)
      throw ParseError("certificate: missing 'signs' section");
    if (!next(line)) throw ParseError("certificate: missing sign values");
    std::istringstream ss(line);
    for (std::size_t i = 0; i < c.graph.edge_count(); ++i) {
      int s;
      if (!(ss >> s)) throw ParseError("certificate: too few signs");
      c.embedding.signs[i] = s;
    }
  }
  return c;
}

VerifyOutcome verify_certificate(const Certificate& c) {
  VerifyOutcome out;
  try {
    out.trace = trace_faces(c.graph, c.embedding);
  } catch (const Error& e) {
    out.message = e.what();
    return out;
  }
  if (c.surface == Surface::orientable) {
    if (!out.trace.orientable) {
      out.message = "signature is not balanced; embedding is nonorientable";
      return out;
    }
    out.implied_genus = out.trace.genus;
  } else {
    // Balanced signature: planar stays 0, otherwise add one crosscap.
    out.implied_genus = !out.trace.orientable ? out.trace.genus
                        : out.trace.genus == 0 ? 0
                                               : 2 * out.trace.genus + 1;
  }
  if (out.trace.faces != c.claimed_faces) {
    out.message = "claimed " + std::to_string(c.claimed_faces) + " faces, traced " +
                  std::to_string(out.trace.faces);
    return out;
  }
  if (out.implied_genus != c.claimed_genus) {
    out.message = "claimed genus " + std::to_string(c.claimed_genus) + ", traced " +
                  std::to_string(out.implied_genus);
    return out;
  }
  out.ok = true;
  out.message = "ok";
  return out;
}

}  // namespace pg
