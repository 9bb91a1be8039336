#pragma once

#include "api.hpp"
#include "catalog/catalog.hpp"
#include "io/specfile.hpp"
#include "runner/emit.hpp"
#include "runner/runner.hpp"
