"""Unit tests for modules.utilities.custom_error.py"""
from unittest.mock import patch


from modules.utilities import custom_error
from . import context


class TestToolkitError(context.BaseTestCase):
    """Tests for ToolkitError class."""

    def test_toolkit_error_message(self) -> None:
        """Test ToolkitError exception message."""
        summary = "ParameterError"
        message = "q must satisfy 1 < q <= p"

        try:
            raise custom_error.ToolkitError(summary=summary, message=message)
        except custom_error.ToolkitError as e:
            self.assertEqual(first=e.message, second=message)
            self.assertEqual(first=str(e), second=message)

    def test_toolkit_error_summary(self) -> None:
        """Test ToolkitError exception summary."""
        summary = "ParameterError"
        message = "q must satisfy 1 < q <= p"

        try:
            raise custom_error.ToolkitError(summary=summary, message=message)
        except custom_error.ToolkitError as e:
            self.assertEqual(first=e.summary, second=summary)

    def test_toolkit_error_repr(self) -> None:
        """Test ToolkitError exception repr."""
        summary = "QuadratureError"
        message = "Integral failed"
        expected_repr = f"{summary}: {message}"

        try:
            raise custom_error.ToolkitError(summary=summary, message=message)
        except custom_error.ToolkitError as e:
            self.assertEqual(first=repr(e), second=expected_repr)
            self.assertEqual(first=e.repr, second=expected_repr)

    @patch("modules.utilities.custom_error.log")
    def test_toolkit_error_logs_on_construction(self, mock_log) -> None:
        """Test ToolkitError logs its repr at error level when constructed."""
        summary = "ConfigError"
        message = "unknown key"
        expected_repr = f"{summary}: {message}"

        try:
            raise custom_error.ToolkitError(summary=summary, message=message)
        except custom_error.ToolkitError:
            mock_log.error.assert_called_once_with(msg=expected_repr, stacklevel=2)

    def test_toolkit_error_to_dict(self) -> None:
        """Test the report field carries context only when it was given."""
        bare = custom_error.ToolkitError(summary="ParameterError", message="s must lie in (0, 1)")
        with_context = custom_error.ToolkitError(summary="ParameterError", message="s must lie in (0, 1)", context={"s": 1.5})

        self.assertEqual(first=bare.to_dict(), second={"error": "ParameterError", "message": "s must lie in (0, 1)"})
        self.assertEqual(
            first=with_context.to_dict(),
            second={"error": "ParameterError", "message": "s must lie in (0, 1)", "context": {"s": 1.5}},
        )

    def test_toolkit_error_unknown_summary(self) -> None:
        """Test a summary outside the known error kinds is rejected."""
        with self.assertRaises(expected_exception=ValueError):
            custom_error.ToolkitError(summary="Oops", message="message")
