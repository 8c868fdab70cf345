package headfirst.simplefactory;

public class Car extends Vehicle {
    public Car() {
        wheels = 4;
    }
}
