#pragma once

// Umbrella header.

#include "capax/certificate.hpp"
#include "capax/closed_forms.hpp"
#include "capax/config_search.hpp"
#include "capax/equivalence.hpp"
#include "capax/errors.hpp"
#include "capax/graph.hpp"
#include "capax/march.hpp"
#include "capax/topfull.hpp"
