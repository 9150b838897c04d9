# regime_market/core/exceptions.py

"""
Custom exceptions for the simulator, grouped by component.
"""


class RegimeMarketError(Exception):
    """Base exception for every error raised by this package."""
    pass


# --- SDE engine ---
class SdeError(RegimeMarketError):
    """Base exception for path generation errors."""
    pass

class InvalidParametersError(SdeError):
    """Raised when process parameters violate their sign or range constraints."""
    def __init__(self, parameter: str, value, message: str):
        self.parameter = parameter
        self.value = value
        super().__init__(f"Invalid parameter '{parameter}'={value!r}: {message}")

class RateMatrixMismatchError(SdeError):
    """Raised when the rate matrix dimension does not match the regime count."""
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Rate matrix has dimension {actual}, expected {expected}.")


# --- Event kernel ---
class KernelError(RegimeMarketError):
    """Base exception for the discrete-event kernel."""
    pass

class AgentRegistrationError(KernelError):
    """Raised on duplicate registration or registration after the run started."""
    def __init__(self, agent_name: str, reason: str):
        self.agent_name = agent_name
        super().__init__(f"Cannot register agent '{agent_name}': {reason}")

class SchedulingError(KernelError):
    """Raised when an event is scheduled before the current simulation time."""
    def __init__(self, fire_at: int, now: int):
        self.fire_at = fire_at
        self.now = now
        super().__init__(f"Cannot schedule event at {fire_at} ns, current time is {now} ns.")

class UnknownRecipientError(KernelError):
    """Raised when a message targets an agent id that is not registered."""
    def __init__(self, recipient: int):
        self.recipient = recipient
        super().__init__(f"Unknown message recipient: {recipient}")

class EventHandlerError(KernelError):
    """Wraps an exception raised by an agent while handling an event."""
    def __init__(self, fire_at: int, seq: int, target: int, kind: str, cause: Exception):
        self.fire_at = fire_at
        self.seq = seq
        self.target = target
        self.kind = kind
        super().__init__(
            f"Agent {target} failed handling {kind} (time={fire_at} ns, seq={seq}): {cause!r}"
        )


# --- Order book ---
class OrderBookError(RegimeMarketError):
    """Base exception for the matching engine."""
    pass

class InvalidOrderError(OrderBookError):
    """Raised when an order has a non-positive quantity or price."""
    def __init__(self, order_id: int, message: str):
        self.order_id = order_id
        super().__init__(f"Invalid order {order_id}: {message}")

class DuplicateOrderError(OrderBookError):
    """Raised when an order id is submitted twice."""
    def __init__(self, order_id: int):
        self.order_id = order_id
        super().__init__(f"Order id {order_id} already submitted.")


# --- Oracle ---
class OracleError(RegimeMarketError):
    """Base exception for fundamental oracle queries."""
    pass

class OracleHorizonError(OracleError):
    """Raised when the oracle is queried outside the fundamental path horizon."""
    def __init__(self, t_ns: int, horizon_ns: int):
        self.t_ns = t_ns
        self.horizon_ns = horizon_ns
        super().__init__(f"Oracle queried at {t_ns} ns, outside horizon [0, {horizon_ns}] ns.")


# --- Execution ---
class ExecutionError(RegimeMarketError):
    """Base exception for parent order execution."""
    pass

class InvalidParentOrderError(ExecutionError):
    """Raised when a parent order violates Q > 0, 0 < tau < T, k >= 1 or k * tau < T."""
    def __init__(self, message: str):
        super().__init__(f"Invalid parent order: {message}")


# --- Calibration ---
class CalibrationError(RegimeMarketError):
    """Base exception for labeling and calibration."""
    pass

class OhlcParseError(CalibrationError):
    """Raised when an OHLC CSV row is malformed."""
    def __init__(self, file_name: str, line_number: int, message: str):
        self.file_name = file_name
        self.line_number = line_number
        super().__init__(f"{file_name}:{line_number}: {message}")

class EmptySampleError(CalibrationError):
    """Raised when a distance or calibration receives an empty sample."""
    def __init__(self, what: str):
        self.what = what
        super().__init__(f"Empty sample: {what}")


# --- Configuration ---
class ConfigError(RegimeMarketError):
    """Base exception for configuration files."""
    pass

class ConfigFileNotFound(ConfigError):
    """Raised when a configuration file does not exist."""
    def __init__(self, file_name: str):
        self.file_name = file_name
        super().__init__(f"Config file '{file_name}' not found.")

class ConfigValidationError(ConfigError):
    """Raised when a configuration file fails validation."""
    def __init__(self, file_name: str, message: str):
        self.file_name = file_name
        super().__init__(f"Invalid config '{file_name}': {message}")


# --- Output files ---
class FileOperationError(RegimeMarketError):
    """Raised when an output file or directory cannot be written."""
    def __init__(self, operation: str, file_name: str, message: str):
        self.operation = operation
        self.file_name = file_name
        super().__init__(f"Failed to {operation} '{file_name}': {message}")
