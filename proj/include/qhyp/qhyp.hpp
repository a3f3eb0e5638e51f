#pragma once

#include "qhyp/asc.hpp"
#include "qhyp/errors.hpp"
#include "qhyp/fock.hpp"
#include "qhyp/laplace.hpp"
#include "qhyp/lattice.hpp"
#include "qhyp/lattice_function.hpp"
#include "qhyp/numeric.hpp"
#include "qhyp/qcore.hpp"
#include "qhyp/random.hpp"
#include "qhyp/spectral.hpp"
#include "qhyp/spectral_point.hpp"
