#pragma once

#include "penergy/bounds.hpp"
#include "penergy/canon.hpp"
#include "penergy/error.hpp"
#include "penergy/families.hpp"
#include "penergy/graph.hpp"
#include "penergy/graph6.hpp"
#include "penergy/search.hpp"
#include "penergy/spectra.hpp"
