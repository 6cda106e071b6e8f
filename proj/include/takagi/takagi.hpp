#pragma once

#include "takagi/basis.hpp"
#include "takagi/bernoulli.hpp"
#include "takagi/coeffs.hpp"
#include "takagi/dyadic.hpp"
#include "takagi/extremal.hpp"
#include "takagi/io.hpp"
#include "takagi/parallel.hpp"
#include "takagi/rational.hpp"
#include "takagi/tl_function.hpp"
#include "takagi/variation.hpp"
