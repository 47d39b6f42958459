// Convenience umbrella: pulls in the whole library.
#pragma once

#include <weylcst/errors.hpp>
#include <weylcst/multivector.hpp>
#include <weylcst/gaussian_poly.hpp>
#include <weylcst/quadrature.hpp>
#include <weylcst/field.hpp>
#include <weylcst/fft.hpp>
#include <weylcst/spectral.hpp>
#include <weylcst/ck_series.hpp>
#include <weylcst/torus.hpp>
#include <weylcst/report.hpp>
#include <weylcst/serialize.hpp>
#include <weylcst/verify.hpp>
