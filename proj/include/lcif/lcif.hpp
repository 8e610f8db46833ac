#pragma once

#include "lcif/rational.hpp"
#include "lcif/cyclotomic.hpp"
#include "lcif/laurent.hpp"
#include "lcif/loc_fraction.hpp"
#include "lcif/finite_field.hpp"
#include "lcif/twist_ring.hpp"
#include "lcif/local_field.hpp"
#include "lcif/tate_gamma.hpp"
#include "lcif/normalizer.hpp"
#include "lcif/doubling_gl1.hpp"
#include "lcif/families.hpp"
#include "lcif/json_io.hpp"
