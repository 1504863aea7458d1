#ifndef DIGITDIM_DIGITDIM_HPP
#define DIGITDIM_DIGITDIM_HPP

#include "digitdim/analytic.hpp"
#include "digitdim/certify.hpp"
#include "digitdim/consequences.hpp"
#include "digitdim/digit_system.hpp"
#include "digitdim/enclosure.hpp"
#include "digitdim/errors.hpp"
#include "digitdim/exact.hpp"
#include "digitdim/measure.hpp"
#include "digitdim/serialization.hpp"

#endif
