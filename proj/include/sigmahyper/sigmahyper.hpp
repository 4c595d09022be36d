#pragma once

#include "sigmahyper/error.hpp"
#include "sigmahyper/core.hpp"
#include "sigmahyper/independence.hpp"
#include "sigmahyper/designs.hpp"
#include "sigmahyper/matching.hpp"
#include "sigmahyper/oracle.hpp"
#include "sigmahyper/json.hpp"
