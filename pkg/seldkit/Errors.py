""" seldkit Custom Errors """


class SeldDataError(Exception):
    """ Base class for errors caused by invalid input data or files """

    def __init__(self, message, *args):
        self.message = message
        super(SeldDataError, self).__init__(message, *args)


class DegenerateDirectionError(SeldDataError):
    """ Raise when a direction vector has zero length """


class SignalTooShortError(SeldDataError):
    """ Raise when a clip is shorter than one analysis window """


class ShapeMismatchError(SeldDataError):
    """ Raise when array dimensions do not match what a layer expects """

    def __init__(self, message, expected=None, actual=None, *args):
        self.expected = expected
        self.actual = actual
        if expected is not None or actual is not None:
            message = "%s (expected %s, found %s)" % (
                message, expected, actual)
        super(ShapeMismatchError, self).__init__(message, *args)


class WavFormatError(SeldDataError):
    """ Raise for WAV files with the wrong layout or encoding """


class LabelFormatError(SeldDataError):
    """ Raise for malformed or out-of-range label CSV rows """

    def __init__(self, message, line=None, *args):
        self.line = line
        if line is not None:
            message = "%s at line %d" % (message, line)
        super(LabelFormatError, self).__init__(message, *args)


class TensorContainerError(SeldDataError):
    """ Raise for corrupt or inconsistent tensor container files """


class WeightManifestError(SeldDataError):
    """ Raise when a weight set does not match the model manifest """


class SceneSpecError(SeldDataError):
    """ Raise for invalid synthetic scene descriptions """


class SceneClippingError(SeldDataError):
    """ Raise when a synthesized scene exceeds full scale """


class OrphanFileError(SeldDataError):
    """ Raise when a corpus audio or label file has no partner """


class LayerExecutionError(SeldDataError):
    """ Raise for errors related to executing one network layer """

    def __init__(self, message, layer=None, *args):
        self.layer = layer
        if layer is not None:
            message = "%s: %s" % (layer, message)
        super(LayerExecutionError, self).__init__(message, *args)


class UsageError(Exception):
    """ Raise for invalid command line usage """

    def __init__(self, message, *args):
        self.message = message
        super(UsageError, self).__init__(message, *args)
