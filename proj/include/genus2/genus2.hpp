#pragma once

#include "catalan.hpp"
#include "complex.hpp"
#include "config.hpp"
#include "elliptic.hpp"
#include "epsilon.hpp"
#include "fock.hpp"
#include "lattice.hpp"
#include "modular.hpp"
#include "necklace.hpp"
#include "partition.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "series.hpp"
#include "sewing.hpp"
#include "taylor.hpp"
#include "verify.hpp"
