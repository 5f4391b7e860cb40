#pragma once

#include <vector>

#include "lcl/error.hpp"
#include "lcl/graph.hpp"
#include "lcl/problem.hpp"

namespace lcl {

// The compiled output alphabet: every accepted, fully output-labeled ball
// paired with a marked root port, rendered "@<port>:<ball encoding>".
// Canonically sorted by rendering; the count is the vector size.
std::vector<Label> enumerate_marked_balls(const GeneralLcl& l, const Guard& guard = {});

// Compiles a ball-acceptance problem into a node-edge-checkable problem over
// marked-ball labels:
//   - node configs: for each accepted ball of root degree d, the multiset of
//     its d marked variants (one mark per root port);
//   - edge pairs: two marked balls whose views merge consistently when glued
//     along their marked half-edges (degrees, inputs, outputs and back ports
//     all agree on the overlap; past either radius the other view is free);
//   - g: a marked ball is allowed on input t iff its marked half-edge carries
//     input t.
// Deterministic: equal inputs give byte-identical serializations. Note the
// solution-transfer round trip below assumes acceptance is invariant under
// port renumbering, as ball properties expressed on unnumbered trees are.
Problem compile_general(const GeneralLcl& l, const Guard& guard = {});

// Relabels a valid solution of l with each half-edge's own marked ball view;
// the result solves the compiled problem. Rejects an invalid input labeling
// with the first violation.
HalfEdgeLabeling lift_solution(const GeneralLcl& l, const Problem& compiled,
                               const PortGraph& g, const HalfEdgeLabeling& f);

// Reads back, per half-edge, the output its marked-ball label carries at the
// marked port; inverts lift_solution on valid labelings. Rejects a labeling
// that does not solve the compiled problem.
HalfEdgeLabeling project_solution(const GeneralLcl& l, const Problem& compiled,
                                  const PortGraph& g, const HalfEdgeLabeling& f2);

}  // namespace lcl
