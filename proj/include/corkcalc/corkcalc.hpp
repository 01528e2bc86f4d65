#pragma once

// Exact wreath-product arithmetic, embedding certificates, blocks with hat
// actions, and cork-twist ledgers. Header-only; see README for the CLI.

#include "corkcalc/action.hpp"
#include "corkcalc/bigint.hpp"
#include "corkcalc/block.hpp"
#include "corkcalc/catalog.hpp"
#include "corkcalc/certificate.hpp"
#include "corkcalc/enumerate.hpp"
#include "corkcalc/error.hpp"
#include "corkcalc/group.hpp"
#include "corkcalc/homomorphism.hpp"
#include "corkcalc/io.hpp"
#include "corkcalc/ledger.hpp"
#include "corkcalc/omega.hpp"
#include "corkcalc/open.hpp"
#include "corkcalc/permutation.hpp"
#include "corkcalc/pipeline.hpp"
#include "corkcalc/series.hpp"
#include "corkcalc/subgroup.hpp"
#include "corkcalc/wreath.hpp"
