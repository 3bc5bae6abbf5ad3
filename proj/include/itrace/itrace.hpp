#pragma once

// Convenience header for the engine (the HTTP server lives in server.hpp).

#include "itrace/bundling.hpp"
#include "itrace/dataset.hpp"
#include "itrace/focus_engine.hpp"
#include "itrace/generator.hpp"
#include "itrace/harness.hpp"
#include "itrace/path.hpp"
#include "itrace/relation_model.hpp"
#include "itrace/scene.hpp"
#include "itrace/snapshot.hpp"
