"""Tests for FlowState"""
