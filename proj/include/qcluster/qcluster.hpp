#ifndef QCLUSTER_QCLUSTER_HPP
#define QCLUSTER_QCLUSTER_HPP

#include "bounds.hpp"
#include "coeff.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "seed.hpp"
#include "seed_io.hpp"
#include "torus.hpp"

#endif // QCLUSTER_QCLUSTER_HPP
