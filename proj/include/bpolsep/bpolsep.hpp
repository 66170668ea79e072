#pragma once

#include "automaton.hpp"
#include "algorithms.hpp"
#include "regex.hpp"
#include "nfa_file.hpp"
#include "problem.hpp"
#include "class_spec.hpp"
#include "oracle.hpp"
#include "group_catalog.hpp"
#include "quadset.hpp"
#include "fixpoint.hpp"
#include "validation.hpp"
#include "report.hpp"
