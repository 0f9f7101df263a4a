/**
 * @file flagtor.hpp
 * @brief Umbrella header for the flagtor library.
 */
#pragma once

#include "flagtor/errors.hpp"
#include "flagtor/complexes.hpp"
#include "flagtor/exact_linalg.hpp"
#include "flagtor/homology.hpp"
#include "flagtor/hochster.hpp"
#include "flagtor/pontryagin.hpp"
#include "flagtor/series.hpp"
#include "flagtor/lscat.hpp"
#include "flagtor/corpus.hpp"
#include "flagtor/check_all.hpp"
#include "flagtor/json_io.hpp"
