#pragma once

// Umbrella header for the library part (the CLI commands live in cli.hpp).

#include "classify.hpp"
#include "compactrep.hpp"
#include "degenrep.hpp"
#include "errors.hpp"
#include "gtbasis.hpp"
#include "io.hpp"
#include "qarith.hpp"
#include "rational.hpp"
#include "verify.hpp"
