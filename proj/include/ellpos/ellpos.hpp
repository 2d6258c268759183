#pragma once

// Exact arithmetic for the poset of isomorphism classes of finite abelian
// ell-groups: counting formulas, the Moebius-type function S, a brute-force
// subgroup-lattice oracle, and truncated Cohen-Lenstra measures.

#include "cohen_lenstra.hpp"
#include "counting.hpp"
#include "group_class.hpp"
#include "lattice.hpp"
#include "mobius.hpp"
#include "poset.hpp"
#include "report.hpp"
