#ifndef GRAPHMOM_GRAPHMOM_HPP
#define GRAPHMOM_GRAPHMOM_HPP

#include "canonical.hpp"
#include "connection.hpp"
#include "exact_linalg.hpp"
#include "hom.hpp"
#include "json_io.hpp"
#include "moments.hpp"
#include "multigraph.hpp"
#include "quantum.hpp"
#include "rank_growth.hpp"
#include "rational.hpp"
#include "sampler.hpp"
#include "spectral.hpp"
#include "targets.hpp"
#include "verify.hpp"

#endif // GRAPHMOM_GRAPHMOM_HPP
