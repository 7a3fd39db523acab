#pragma once

#include "error.hpp"
#include "rational.hpp"
#include "poly.hpp"
#include "bipoly.hpp"
#include "series.hpp"
#include "colouring.hpp"
#include "coeff_seq.hpp"
#include "ltimes.hpp"
#include "generator.hpp"
#include "pbw.hpp"
#include "verma.hpp"
#include "json_io.hpp"
