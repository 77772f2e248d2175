#pragma once
// Umbrella header for the ACIR feature-location library.

#include "acir/corpus.hpp"
#include "acir/errors.hpp"
#include "acir/eval.hpp"
#include "acir/glob.hpp"
#include "acir/index.hpp"
#include "acir/java_methods.hpp"
#include "acir/partition.hpp"
#include "acir/porter.hpp"
#include "acir/text.hpp"
#include "acir/vcs.hpp"
