#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "powergenus/graph.hpp"
#include "powergenus/topology.hpp"

namespace pg {

/// Cyclic order of neighbours around each vertex (edge-ends of a simple
/// graph are identified by the neighbour they lead to).
struct RotationSystem {
  std::vector<std::vector<Vertex>> order;
};

/// Rotation system plus an edge signature; signs[i] belongs to
/// graph.edges()[i] and is +1 or -1.
struct SignedRotationSystem {
  RotationSystem rotation;
  std::vector<int> signs;
};

/// Face tracing result.
///
/// States are (dart, orientation) pairs. From dart u->v travelled with
/// local orientation s, the walk continues with s' = s * sign(uv) and the
/// dart leaving v that follows v->u in the rotation at v (s' = +1) or
/// precedes it (s' = -1). Each face is traced twice, once per direction,
/// so faces = orbits / 2. The embedding is orientable when the signature
/// is balanced (every cycle has an even number of negative edges); then
/// `genus` is the orientable genus (2 - V + E - f) / 2, otherwise it is the
/// nonorientable genus 2 - V + E - f.
struct FaceTrace {
  std::size_t faces = 0;
  long long euler_characteristic = 0;
  std::size_t euler_genus = 0;
  bool orientable = true;
  std::size_t genus = 0;
  /// Boundary walks as vertex sequences, one per face.
  std::vector<std::vector<Vertex>> boundaries;
};

/// Throws InvalidRotation if the rotation does not list exactly the
/// neighbours of every vertex, or a sign is not +-1.
FaceTrace trace_faces(const Graph& g, const RotationSystem& r);
FaceTrace trace_faces(const Graph& g, const SignedRotationSystem& r);

void validate_rotation(const Graph& g, const RotationSystem& r);

/// Embedding certificate file:
///   certificate <orientable|nonorientable>
///   genus <claimed genus on that surface>
///   faces <face count>
///   n m
///   u v            (m lines, the graph's edge list)
///   rotation
///   v: w1 w2 ...   (n lines)
///   signs          (nonorientable only)
///   s1 s2 ... sm
/// A nonorientable certificate whose signature is balanced claims the
/// crosscap bound 2g + 1 of its orientable genus g (0 when g = 0).
struct Certificate {
  Surface surface = Surface::orientable;
  std::size_t claimed_genus = 0;
  std::size_t claimed_faces = 0;
  Graph graph;
  SignedRotationSystem embedding;
};

void write_certificate(std::ostream& os, const Certificate& c);
Certificate read_certificate(std::istream& is);

struct VerifyOutcome {
  bool ok = false;
  FaceTrace trace;
  std::size_t implied_genus = 0;
  std::string message;
};

/// Re-traces the faces and checks face count and genus claims exactly.
VerifyOutcome verify_certificate(const Certificate& c);

}  // namespace pg
