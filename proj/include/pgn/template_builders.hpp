#pragma once

// The explicit template family: the standard block g, the linked template
// f^(1) built from rescaled copies of g, and the replay operator Phi.
//
// Infinite templates are materialized on a finite horizon [0, T]. When T
// falls inside an interval, the partial interval stays in the path but its
// right endpoint is not listed as an anchor.

#include "pgn/template_core.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace pgn {

/// The block g on [0, d] with breakpoints {0, n, d}: component 1 falls with
/// slope -1/n to -1 and climbs back with slope 1/m; components 2..d rise to
/// 1/(d-1) and fall back. Zero at both ends.
Template standard_block(const Dims& dims);

/// f^(1) on [0, horizon]: block p occupies [b_p, b_p + p d] with
/// b_p = d p (p - 1) / 2 and is g stretched in time and value by p.
/// Throws DomainError unless horizon > 0.
LinkedTemplate build_f1(const Dims& dims, const Rational& horizon);

/// Produces a linked template on [0, horizon] for any requested horizon.
using LinkedGenerator = std::function<LinkedTemplate(const Rational& horizon)>;

/// Phi applied to a materialized source. New intervals are J_1 = I_1 and
/// J_{q+1} = c_{q+1} + (I_1 u ... u I_{q+1}); on J_q the output replays the
/// source from time 0. Throws DomainError if `source` is too short to cover
/// [0, horizon] (the message states the horizon needed).
LinkedTemplate phi(const LinkedTemplate& source, const Rational& horizon);

/// Phi over a regenerable source: the source is materialized on exactly the
/// horizon the replay needs, which never exceeds `horizon`.
LinkedTemplate phi(const LinkedGenerator& source, const Rational& horizon);

/// Phi^iterates(f^(1)) on [0, horizon]. `iterates == 0` returns f^(1)
/// itself, the 1-divergence template; Phi(f^(1)) is a different object.
/// Throws DomainError if iterates < 0 or horizon <= 0.
LinkedTemplate build_fk(const Dims& dims, int iterates, const Rational& horizon);

/// Generator form of build_fk, suitable as a Phi source.
LinkedGenerator fk_generator(const Dims& dims, int iterates);

/// First `count` anchors of Phi^iterates(f^(1)), computed from interval
/// lengths alone (no path is materialized).
std::vector<Rational> fk_anchors(const Dims& dims, int iterates, std::size_t count);

}  // namespace pgn
