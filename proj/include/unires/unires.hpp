#pragma once

// Everything: exact linear algebra, the complexes F, G and P', fiber strands, Tor and Betti tables.

#include "unires/betti/betti.hpp"
#include "unires/complex/build_g.hpp"
#include "unires/complex/ideal.hpp"
#include "unires/complex/p_complexes.hpp"
#include "unires/complex/strands.hpp"
#include "unires/complex/verify.hpp"
#include "unires/linalg/smith.hpp"
#include "unires/linalg/triplet_io.hpp"
#include "unires/tor/tor.hpp"
