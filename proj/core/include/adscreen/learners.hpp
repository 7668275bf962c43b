#pragma once

// Umbrella header for the from-scratch classifiers.
#include "adscreen/decision_tree.hpp"
#include "adscreen/kernel_svm.hpp"
#include "adscreen/logistic_regression.hpp"
#include "adscreen/random_forest.hpp"
#include "adscreen/trained_model.hpp"
