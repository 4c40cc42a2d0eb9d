#pragma once

#include "polyquant/coefficient.hpp"
#include "polyquant/geometry.hpp"
#include "polyquant/oracle.hpp"
#include "polyquant/polygon_quant.hpp"
#include "polyquant/quadrature.hpp"
#include "polyquant/quantizer.hpp"
#include "polyquant/segment_quant.hpp"
