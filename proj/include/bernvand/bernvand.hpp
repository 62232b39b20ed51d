#pragma once

// Umbrella header.

#include "bernvand/bezout.hpp"
#include "bernvand/conditioning.hpp"
#include "bernvand/experiments.hpp"
#include "bernvand/polybases.hpp"
#include "bernvand/scalar_kernels.hpp"
#include "bernvand/simplexnd.hpp"
#include "bernvand/structured.hpp"
#include "bernvand/vandermonde1d.hpp"
