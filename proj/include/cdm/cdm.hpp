#pragma once

#include "cdm/arith.hpp"
#include "cdm/circulant.hpp"
#include "cdm/classifier.hpp"
#include "cdm/cyclotomic.hpp"
#include "cdm/labeler.hpp"
#include "cdm/labeling.hpp"
#include "cdm/linear.hpp"
#include "cdm/oracle.hpp"
#include "cdm/rational.hpp"
#include "cdm/spectral.hpp"
