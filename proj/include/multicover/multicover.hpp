#pragma once

#include "multicover/cover.hpp"
#include "multicover/geometry.hpp"
#include "multicover/io.hpp"
#include "multicover/model.hpp"
#include "multicover/oracle.hpp"
#include "multicover/outer_cover.hpp"
